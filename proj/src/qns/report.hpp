#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qns/norms.hpp"

namespace qns {

/// %.17g rendering used for every numeric output; round-trips doubles.
std::string format_g17(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string hash_hex(const std::string& s);

/// A named table of string cells; the unit all subcommand outputs share.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
};

/// Column schema of the spec'd norm record (cz column only in 3D), with the
/// corpus field name prepended.
std::vector<std::string> norm_record_columns(int dims);
std::vector<std::string> norm_record_row(const std::string& field, const std::string& kind,
                                         const std::string& alpha_label, double T,
                                         const NormEstimate& est, int dims,
                                         std::uint64_t seed);

}  // namespace qns
