#pragma once

#include <array>
#include <vector>

#include "qns/grid.hpp"

namespace qns {

struct Ball {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double radius = 0.0;
};

/// Finite sample of (radius, center) pairs standing in for the continuum sup
/// over all balls.  Radii form the dyadic chain r_m = (L/8) 2^{-m}; for each
/// radius the centers tile the central cube [L/4, 3L/4]^d on grid nodes with
/// stride <= stride_factor * radius.  Every estimate taken over the family is
/// a lower bound for the continuum supremum.
class BallFamily {
public:
    static BallFamily dyadic(const Grid& grid, int radius_levels = 4,
                             double stride_factor = 0.5);
    static BallFamily single(const Ball& ball);

    const std::vector<Ball>& balls() const { return balls_; }
    int radius_levels() const { return radius_levels_; }
    double stride_factor() const { return stride_factor_; }
    double max_radius() const;

    /// Centers and radii multiplied by `factor` (the x -> x/lambda rematching).
    BallFamily rescaled(double factor) const;

private:
    std::vector<Ball> balls_;
    int radius_levels_ = 0;
    double stride_factor_ = 0.0;
};

}  // namespace qns
