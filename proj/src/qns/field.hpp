#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "qns/grid.hpp"

namespace qns {

/// Real scalar field on a periodic grid, carrying both physical node values
/// and Fourier coefficients with lazy one-way synchronization.  Fields are
/// immutable once constructed; copies share storage.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid);  // zero field

    static ScalarField from_values(const Grid& grid, std::vector<double> values);
    static ScalarField from_fourier(const Grid& grid,
                                    std::vector<std::complex<double>> fourier);

    const Grid& grid() const;

    /// Physical node values (row-major), synchronized on demand.
    const std::vector<double>& values() const;
    /// Fourier coefficients (synthesis convention of fft_forward).
    const std::vector<std::complex<double>>& fourier() const;

    double mean() const;
    double max_abs() const;
    /// L2 norm as a torus integral: sqrt(sum f^2 * cell_volume).
    double l2_norm() const;
    /// L1 norm as a torus integral.
    double l1_norm() const;

    /// Max relative disagreement between the two representations when both
    /// are materialized; 0 when only one side exists.
    double representation_error() const;

    ScalarField operator+(const ScalarField& other) const;
    ScalarField operator-(const ScalarField& other) const;
    ScalarField operator*(double scalar) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    explicit ScalarField(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
};

inline ScalarField operator*(double scalar, const ScalarField& f) { return f * scalar; }

/// Applies a Fourier multiplier m(k): coefficient at integer wavevector k is
/// scaled by symbol(k).  The workhorse behind every diagonal operator.
ScalarField apply_multiplier(
    const ScalarField& f,
    const std::function<std::complex<double>(const std::array<int, 3>&)>& symbol);

/// Vector field with one scalar component per grid axis.
class VectorField {
public:
    explicit VectorField(const Grid& grid);  // zero field
    explicit VectorField(std::vector<ScalarField> components, bool divergence_free = false);

    const Grid& grid() const { return components_[0].grid(); }
    int dims() const { return static_cast<int>(components_.size()); }
    const ScalarField& operator[](int i) const { return components_[i]; }
    const std::vector<ScalarField>& components() const { return components_; }

    bool divergence_free() const { return divergence_free_; }
    VectorField tagged_divergence_free(bool flag) const;

    double max_abs() const;
    double l2_norm() const;  // sqrt of the sum of component L2 norms squared

    /// max_k |k . u_hat(k)| / max_k |u_hat(k)|; the discrete divergence-free
    /// defect used by the invariant checks.
    double divergence_defect() const;

    VectorField operator+(const VectorField& other) const;
    VectorField operator-(const VectorField& other) const;
    VectorField operator*(double scalar) const;

private:
    std::vector<ScalarField> components_;
    bool divergence_free_ = false;
};

inline VectorField operator*(double scalar, const VectorField& u) { return u * scalar; }

}  // namespace qns
