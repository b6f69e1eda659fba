#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qns {

/// Parsed [section] key=value experiment description.  Parsing is strict:
/// unknown sections or keys are errors, and the seed is mandatory.  All
/// defaults materialize into the canonical dump so run manifests are
/// self-describing.
struct ExperimentConfig {
    // [grid]
    int dims = 2;
    int resolution = 128;
    double box_length = 1.0;

    // [balls]
    int radius_levels = 4;
    double stride_factor = 0.5;

    // [time]
    double ratio = 0.5;
    int levels = 24;
    double t_cap = 0.0;  // 0 -> (L/8)^2

    // [solver]
    double alpha = 0.5;
    std::vector<double> alphas{0.0, 0.25, 0.5, 0.75};
    int picard_iterations = 10;
    int duhamel_cells = 24;
    double smallness_threshold = 0.0;  // 0 -> calibrated default
    std::string initial = "taylor_green amplitude=0.02";
    int cross_check_steps = 2048;

    // [corpus]
    std::uint64_t seed = 0;  // mandatory, 0 means unset
    int n_trajectories = 10;

    // [output]
    bool write_fields = true;

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    /// Canonical dump with every key explicit; hashing and manifests use it.
    std::string materialize() const;
    std::string config_hash() const;

    double effective_t_cap() const;
};

}  // namespace qns
