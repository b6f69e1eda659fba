#include "qns/ball_family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qns {

BallFamily BallFamily::dyadic(const Grid& grid, int radius_levels, double stride_factor) {
    if (radius_levels < 1)
        throw std::invalid_argument("BallFamily: need at least one radius level");
    if (!(stride_factor > 0.0))
        throw std::invalid_argument("BallFamily: stride factor must be positive");

    const double L = grid.box();
    BallFamily family;
    family.radius_levels_ = radius_levels;
    family.stride_factor_ = stride_factor;

    for (int m = 0; m < radius_levels; ++m) {
        const double r = (L / 8.0) * std::pow(2.0, -m);
        // Snap the stride to whole node spacings, at least one.
        std::array<int, 3> stride{1, 1, 1};
        std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
        for (int a = 0; a < grid.dims(); ++a) {
            double h = grid.spacing(a);
            stride[a] = std::max(1, static_cast<int>(std::floor(stride_factor * r / h)));
            lo[a] = static_cast<int>(std::lround(0.25 * L / h));
            hi[a] = static_cast<int>(std::lround(0.75 * L / h));
        }
        std::array<int, 3> ij{0, 0, 0};
        for (ij[0] = lo[0]; ij[0] <= hi[0]; ij[0] += stride[0])
            for (ij[1] = lo[1]; ij[1] <= hi[1]; ij[1] += stride[1]) {
                if (grid.dims() == 2) {
                    Ball b;
                    b.center = {ij[0] * grid.spacing(0), ij[1] * grid.spacing(1), 0.0};
                    b.radius = r;
                    family.balls_.push_back(b);
                } else {
                    for (ij[2] = lo[2]; ij[2] <= hi[2]; ij[2] += stride[2]) {
                        Ball b;
                        b.center = {ij[0] * grid.spacing(0), ij[1] * grid.spacing(1),
                                    ij[2] * grid.spacing(2)};
                        b.radius = r;
                        family.balls_.push_back(b);
                    }
                }
            }
    }
    return family;
}

BallFamily BallFamily::single(const Ball& ball) {
    BallFamily family;
    family.radius_levels_ = 1;
    family.stride_factor_ = 0.0;
    family.balls_.push_back(ball);
    return family;
}

double BallFamily::max_radius() const {
    double r = 0.0;
    for (const auto& b : balls_) r = std::max(r, b.radius);
    return r;
}

BallFamily BallFamily::rescaled(double factor) const {
    BallFamily out = *this;
    for (auto& b : out.balls_) {
        for (auto& c : b.center) c *= factor;
        b.radius *= factor;
    }
    return out;
}

}  // namespace qns
