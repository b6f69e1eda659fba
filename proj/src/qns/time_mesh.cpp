#include "qns/time_mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace qns {

TimeMesh::TimeMesh(double t_cap, double ratio, int levels)
    : t_cap_(t_cap), ratio_(ratio), levels_(levels) {
    if (!(t_cap > 0.0)) throw std::invalid_argument("TimeMesh: t_cap must be positive");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("TimeMesh: ratio must lie in (0,1)");
    if (levels < 1) throw std::invalid_argument("TimeMesh: need at least one level");
}

double TimeMesh::edge(int k) const {
    if (k < 0 || k > levels_) throw std::out_of_range("TimeMesh::edge");
    return t_cap_ * std::pow(ratio_, k);
}

double TimeMesh::sample(int k) const {
    if (k < 0 || k >= levels_) throw std::out_of_range("TimeMesh::sample");
    return edge(k) * std::sqrt(ratio_);
}

double TimeMesh::weight(int k, double exponent) const {
    double hi = edge(k), lo = edge(k + 1);
    if (exponent == 1.0) return std::log(hi / lo);
    if (exponent > 1.0) throw std::invalid_argument("TimeMesh::weight: exponent must be <= 1");
    double p = 1.0 - exponent;
    return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

TimeMesh TimeMesh::refined() const { return TimeMesh(t_cap_, std::sqrt(ratio_), 2 * levels_); }

TimeMesh TimeMesh::extended(int extra_levels) const {
    return TimeMesh(t_cap_, ratio_, levels_ + extra_levels);
}

TimeMesh TimeMesh::rescaled(double factor) const {
    return TimeMesh(t_cap_ * factor, ratio_, levels_);
}

}  // namespace qns
