#pragma once

#include <vector>

#include "qns/ball_family.hpp"
#include "qns/field.hpp"
#include "qns/norms.hpp"
#include "qns/trajectory.hpp"

namespace qns {

struct QuadratureNode {
    double s;
    double w;
};

/// Quadrature for int_0^t integrands with endpoint concentration: the cells
/// grade geometrically toward both s = 0 and s = t (the innermost cell on
/// each side closes the endpoint), Gauss-Legendre points within each cell.
/// `cells` must be even.
std::vector<QuadratureNode> graded_quadrature(double t, int cells = 24, double ratio = 0.5,
                                              int gauss_points = 5);

/// I(f, t, .) = int_0^t e^{(t-s)D} D f(s, .) ds, evaluated spectrally per
/// quadrature node.  Requires 0 < t <= horizon of f.
ScalarField duhamel_laplacian(const Trajectory& f, double t, int cells = 24);

struct LemmaRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Compares int_0^T |I(f,t,.)|_2^2 t^{-a} dt against the same integral of f
/// itself; the measured ratio is the operator-bound constant.
LemmaRatio lemma23_check(const Trajectory& f, double alpha, double T);

struct SchurMass {
    double alpha = 0.0;
    double zeta = 0.0;
    double sup_row = 0.0;  // sup over t of int_0^t K(s,t) ds
    double sup_col = 0.0;  // sup over s of int_s^inf K(s,t) dt
};

/// Row and column masses of K(s,t) = 1_{0<=s<=t} (s/t)^{a/2} z^2 e^{-(t-s)z^2},
/// the kernel behind the Schur-test bound.  Suprema are taken over the given
/// t grid (reused as the s grid for columns).
std::vector<SchurMass> schur_kernel_integrals(double alpha, const std::vector<double>& zeta_values,
                                              const std::vector<double>& t_values);

struct Lemma24Result {
    double lhs = 0.0;
    double J = 0.0;       // Carleson-type L1 functional of f
    double L1part = 0.0;  // int_0^1 |f(t,.)|_1 t^{-a} dt
    double ratio = 0.0;   // lhs / (J * L1part)
};

/// Tests int_0^1 |sqrt(-D) e^{tD} int_0^t f|_2^2 t^{-a} dt  against
/// J(f;a) * int_0^1 |f(t,.)|_1 t^{-a} dt.  The trajectory horizon must be 1;
/// rescale time first.
Lemma24Result lemma24_check(const Trajectory& f, double alpha, const BallFamily& family);

/// B(u, v; t) = int_0^t e^{(t-s)D} P div(u x v) ds with 2/3-dealiased
/// products, Leray projection inside the integrand, and the graded
/// quadrature above.  u and v must share grid and mesh; t <= horizon.
VectorField bilinear_B(const Trajectory& u, const Trajectory& v, double t, int cells = 24);

struct BilinearBounds {
    double linf_ratio = 0.0;      // sup_t t^{1/2} |B|_inf / (|u|_X |v|_X)
    double carleson_ratio = 0.0;  // Carleson part of |B|_X / (|u|_X |v|_X)
    double u_norm = 0.0;
    double v_norm = 0.0;
};

BilinearBounds bilinear_bounds_check(const Trajectory& u, const Trajectory& v, double alpha,
                                     double T, const BallFamily& family, int cells = 24);

/// Pressure recovered from a divergence-free velocity via
/// p = (-D)^{-1} div div (u x u); mean-zero by construction.
ScalarField pressure_from_velocity(const VectorField& u);

}  // namespace qns
