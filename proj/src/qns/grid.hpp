#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace qns {

/// Uniform periodic lattice on the torus [0,L)^d, d = 2 or 3.
///
/// Physical node (i_0,...,i_{d-1}) sits at x_a = i_a * L / res[a].  The
/// spectral side indexes integer wavevectors k with |k_a| <= res[a]/2 and
/// angular frequency xi_a = 2*pi*k_a / L.
class Grid {
public:
    Grid(int dims, std::array<int, 3> res, double box_length);

    static Grid square(int n, double box_length = 1.0) { return Grid(2, {n, n, 1}, box_length); }
    static Grid cube(int n, double box_length = 1.0) { return Grid(3, {n, n, n}, box_length); }

    int dims() const { return dims_; }
    int res(int axis) const { return res_[axis]; }
    double box() const { return box_; }
    std::size_t size() const { return size_; }

    double spacing(int axis) const { return box_ / res_[axis]; }
    double cell_volume() const;

    /// Physical coordinates of the node with flat (row-major) index `idx`.
    std::array<double, 3> node(std::size_t idx) const;

    /// Integer wavevector of the spectral coefficient at flat index `idx`
    /// (row-major over the same index space as the physical array).
    std::array<int, 3> wavevector(std::size_t idx) const;

    /// Angular frequency 2*pi*k/L for a given integer wavevector.
    std::array<double, 3> frequency(const std::array<int, 3>& k) const;

    /// True if any axis of `k` sits on the unpaired Nyquist row res/2.
    bool on_nyquist(const std::array<int, 3>& k) const;

    /// Flat index from per-axis node indices (taken modulo the resolution).
    std::size_t flat_index(std::array<int, 3> ij) const;

    /// Shortest signed displacement a - b per axis under periodic wrap.
    std::array<double, 3> torus_delta(const std::array<double, 3>& a,
                                      const std::array<double, 3>& b) const;
    double torus_distance(const std::array<double, 3>& a,
                          const std::array<double, 3>& b) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

    std::string describe() const;

private:
    int dims_;
    std::array<int, 3> res_;
    double box_;
    std::size_t size_;
};

}  // namespace qns
