#pragma once

#include <string>
#include <vector>

#include "qns/field.hpp"

namespace qns {

/// e^{t Delta} f: coefficient at k scaled by exp(-t |2 pi k / L|^2).
/// Preserves the mean exactly; rejects t < 0.
ScalarField heat_semigroup(const ScalarField& f, double t);
VectorField heat_semigroup(const VectorField& u, double t);

/// e^{-t sqrt(-Delta)} f: coefficient scaled by exp(-t |2 pi k / L|).
ScalarField poisson_semigroup(const ScalarField& f, double t);

/// (-Delta)^{beta/2} f: coefficient scaled by |2 pi k / L|^beta, mode 0 -> 0.
/// For beta < 0 the input must have zero mean.
ScalarField fractional_laplacian(const ScalarField& f, double beta);

/// R_j = d_j (-Delta)^{-1/2}: symbol i xi_j / |xi|, mode 0 -> 0.
ScalarField riesz_transform(const ScalarField& f, int axis);

/// Exact spectral d/dx_j (Nyquist rows zeroed to keep real fields real).
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);
ScalarField laplacian(const ScalarField& f);

/// (-Delta)^{-1} on mean-zero fields; mode 0 -> 0.
ScalarField inverse_laplacian(const ScalarField& f);

/// Leray projection onto divergence-free fields:
/// u_hat(k) -> u_hat(k) - k (k . u_hat(k)) / |k|^2, mode 0 unchanged.
VectorField leray_project(const VectorField& u);

/// The four admissible-kernel families used by the tent characterizations.
/// poisson_dt  : t d/dt e^{-t sqrt(-Delta)}         (scalar kernel)
/// poisson_grad: t d/dx_j e^{-t sqrt(-Delta)}       (one kernel per axis)
/// heat_dt     : t d/dt e^{t^2 Delta}               (scalar kernel)
/// heat_grad   : t d/dx_j e^{t^2 Delta}             (one kernel per axis)
enum class TentChoice { poisson_dt, poisson_grad, heat_dt, heat_grad };

std::string tent_choice_label(TentChoice c);       // "1a", "1b", "2a", "2b"
TentChoice tent_choice_from_label(const std::string& label);
bool tent_choice_is_vector(TentChoice c);

/// Convolution with the dilated kernel psi_t of the given family; vector
/// families return one field per axis, scalar families a single field.
/// All kernels have zero integral, so mode 0 -> 0.  Requires t > 0.
std::vector<ScalarField> tent_convolution(const ScalarField& f, TentChoice choice, double t);

/// Pointwise product with 2/3-rule truncation of both factors and the result.
ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b);

}  // namespace qns
