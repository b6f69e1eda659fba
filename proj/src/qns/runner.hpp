#pragma once

#include <string>
#include <vector>

#include "qns/experiment_config.hpp"
#include "qns/report.hpp"

namespace qns {

// Process exit codes shared with the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericGuard = 3;
inline constexpr int kExitIoError = 4;

struct RunFlags {
    std::string out_root;  // output root directory; QNS_OUT or ./qns-out when empty
    std::string gen_spec;  // `gen` only: single field-spec string
};

struct RunResult {
    std::vector<ResultTable> tables;
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> content
    std::vector<std::string> warnings;
};

/// Computes every table and artifact of a subcommand; throws on invalid
/// input or tripped numerical guards, writes nothing.
RunResult execute(const std::string& subcommand, const ExperimentConfig& cfg,
                  const RunFlags& flags);

/// Full CLI path: execute, then persist CSVs, artifacts, and the JSON
/// manifest into a timestamped directory under the output root.
int run(const std::string& subcommand, const ExperimentConfig& cfg, const RunFlags& flags);

/// Re-verifies a stored manifest by recomputing its run and comparing every
/// numeric cell within 1e-12.
int run_check(const std::string& manifest_path);

const std::vector<std::string>& known_subcommands();

}  // namespace qns
