#include "qns/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qns {

namespace {

bool fft_friendly(int n) {
    while (n % 2 == 0) n /= 2;
    while (n % 3 == 0) n /= 3;
    return n == 1;
}

}  // namespace

Grid::Grid(int dims, std::array<int, 3> res, double box_length)
    : dims_(dims), res_(res), box_(box_length) {
    if (dims != 2 && dims != 3)
        throw std::invalid_argument("Grid: dims must be 2 or 3");
    if (!(box_length > 0.0))
        throw std::invalid_argument("Grid: box length must be positive");
    size_ = 1;
    for (int a = 0; a < dims_; ++a) {
        if (res_[a] < 16 || res_[a] % 2 != 0 || !fft_friendly(res_[a]))
            throw std::invalid_argument("Grid: resolution must be >= 16, even, and 2^a*3^b");
        size_ *= static_cast<std::size_t>(res_[a]);
    }
    for (int a = dims_; a < 3; ++a) res_[a] = 1;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims_; ++a) v *= spacing(a);
    return v;
}

std::array<double, 3> Grid::node(std::size_t idx) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = dims_ - 1; a >= 0; --a) {
        int i = static_cast<int>(idx % res_[a]);
        idx /= res_[a];
        x[a] = i * spacing(a);
    }
    return x;
}

std::array<int, 3> Grid::wavevector(std::size_t idx) const {
    std::array<int, 3> k{0, 0, 0};
    for (int a = dims_ - 1; a >= 0; --a) {
        int i = static_cast<int>(idx % res_[a]);
        idx /= res_[a];
        k[a] = (i <= res_[a] / 2) ? i : i - res_[a];
    }
    return k;
}

std::array<double, 3> Grid::frequency(const std::array<int, 3>& k) const {
    const double c = 2.0 * std::numbers::pi / box_;
    return {c * k[0], c * k[1], c * k[2]};
}

bool Grid::on_nyquist(const std::array<int, 3>& k) const {
    for (int a = 0; a < dims_; ++a)
        if (k[a] == res_[a] / 2) return true;
    return false;
}

std::size_t Grid::flat_index(std::array<int, 3> ij) const {
    std::size_t idx = 0;
    for (int a = 0; a < dims_; ++a) {
        int i = ij[a] % res_[a];
        if (i < 0) i += res_[a];
        idx = idx * res_[a] + static_cast<std::size_t>(i);
    }
    return idx;
}

std::array<double, 3> Grid::torus_delta(const std::array<double, 3>& a,
                                        const std::array<double, 3>& b) const {
    std::array<double, 3> d{0.0, 0.0, 0.0};
    for (int ax = 0; ax < dims_; ++ax) {
        double v = a[ax] - b[ax];
        v -= box_ * std::round(v / box_);
        d[ax] = v;
    }
    return d;
}

double Grid::torus_distance(const std::array<double, 3>& a,
                            const std::array<double, 3>& b) const {
    auto d = torus_delta(a, b);
    return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
}

bool Grid::operator==(const Grid& other) const {
    return dims_ == other.dims_ && res_ == other.res_ && box_ == other.box_;
}

std::string Grid::describe() const {
    std::ostringstream os;
    os << dims_ << "d ";
    for (int a = 0; a < dims_; ++a) os << (a ? "x" : "") << res_[a];
    os << " L=" << box_;
    return os.str();
}

}  // namespace qns
