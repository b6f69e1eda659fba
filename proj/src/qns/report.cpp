#include "qns/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qns {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s)));
    return buf;
}

void ResultTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("ResultTable: row width mismatch in " + name);
    rows.push_back(std::move(row));
}

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? ',' : '\n');
    return os.str();
}

std::vector<std::string> norm_record_columns(int dims) {
    std::vector<std::string> cols{"field", "norm_kind", "alpha",      "T",
                                  "value", "max_ball_cx", "max_ball_cy"};
    if (dims == 3) cols.push_back("max_ball_cz");
    cols.insert(cols.end(), {"max_ball_r", "n_balls", "n_time_levels", "resolution", "seed"});
    return cols;
}

std::vector<std::string> norm_record_row(const std::string& field, const std::string& kind,
                                         const std::string& alpha_label, double T,
                                         const NormEstimate& est, int dims,
                                         std::uint64_t seed) {
    std::vector<std::string> row{field, kind, alpha_label,
                                 std::isinf(T) ? "inf" : format_g17(T),
                                 format_g17(est.value)};
    if (est.maximizing_ball) {
        const Ball& b = *est.maximizing_ball;
        row.push_back(format_g17(b.center[0]));
        row.push_back(format_g17(b.center[1]));
        if (dims == 3) row.push_back(format_g17(b.center[2]));
        row.push_back(format_g17(b.radius));
    } else {
        row.insert(row.end(), dims == 3 ? 4 : 3, "none");
    }
    row.push_back(std::to_string(est.n_balls));
    row.push_back(std::to_string(est.n_time_levels));
    row.push_back(std::to_string(est.resolution));
    row.push_back(std::to_string(seed));
    return row;
}

}  // namespace qns
