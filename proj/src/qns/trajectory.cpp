#include "qns/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace qns {

Trajectory::Trajectory(TimeMesh mesh, std::vector<ScalarField> nodes)
    : mesh_(mesh), scal_nodes_(std::move(nodes)) {
    if (scal_nodes_.empty()) throw std::invalid_argument("Trajectory: empty");
    if (static_cast<int>(scal_nodes_.size()) != mesh_.levels())
        throw std::invalid_argument("Trajectory: node count must match mesh levels");
    for (const auto& f : scal_nodes_)
        if (f.grid() != scal_nodes_[0].grid())
            throw std::invalid_argument("Trajectory: mixed grids");
}

Trajectory::Trajectory(TimeMesh mesh, std::vector<VectorField> nodes)
    : mesh_(mesh), vec_nodes_(std::move(nodes)) {
    if (vec_nodes_.empty()) throw std::invalid_argument("Trajectory: empty");
    if (static_cast<int>(vec_nodes_.size()) != mesh_.levels())
        throw std::invalid_argument("Trajectory: node count must match mesh levels");
    for (const auto& f : vec_nodes_)
        if (f.grid() != vec_nodes_[0].grid())
            throw std::invalid_argument("Trajectory: mixed grids");
}

int Trajectory::size() const {
    return static_cast<int>(is_vector() ? vec_nodes_.size() : scal_nodes_.size());
}

const ScalarField& Trajectory::scalar_node(int k) const {
    if (is_vector()) throw std::logic_error("Trajectory: scalar access on vector data");
    return scal_nodes_.at(k);
}

const VectorField& Trajectory::vector_node(int k) const {
    if (!is_vector()) throw std::logic_error("Trajectory: vector access on scalar data");
    return vec_nodes_.at(k);
}

const Grid& Trajectory::grid() const {
    return is_vector() ? vec_nodes_[0].grid() : scal_nodes_[0].grid();
}

Trajectory::Bracket Trajectory::bracket(double t, double clamp_cap) const {
    if (!(t > 0.0)) throw std::invalid_argument("Trajectory: t must be positive");
    const int n = size();
    int top = 0;
    if (clamp_cap > 0.0)
        while (top + 1 < n && mesh_.sample(top) > clamp_cap) ++top;
    if (t >= mesh_.sample(top)) return {top, top, 1.0};
    if (t <= mesh_.sample(n - 1)) return {n - 1, n - 1, 1.0};
    // samples are decreasing; find k with sample(k) >= t >= sample(k+1)
    int k = top;
    while (k + 1 < n && mesh_.sample(k + 1) > t) ++k;
    double hi = mesh_.sample(k), lo = mesh_.sample(k + 1);
    double theta = (std::log(t) - std::log(lo)) / (std::log(hi) - std::log(lo));
    return {k, k + 1, theta};
}

ScalarField Trajectory::scalar_at(double t, double clamp_cap) const {
    auto b = bracket(t, clamp_cap);
    if (b.k_hi == b.k_lo) return scalar_node(b.k_hi);
    return scalar_node(b.k_hi) * b.theta + scalar_node(b.k_lo) * (1.0 - b.theta);
}

VectorField Trajectory::vector_at(double t, double clamp_cap) const {
    auto b = bracket(t, clamp_cap);
    if (b.k_hi == b.k_lo) return vector_node(b.k_hi);
    return vector_node(b.k_hi) * b.theta + vector_node(b.k_lo) * (1.0 - b.theta);
}

}  // namespace qns
