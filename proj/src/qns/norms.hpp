#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qns/ball_family.hpp"
#include "qns/field.hpp"
#include "qns/spectral.hpp"
#include "qns/time_mesh.hpp"
#include "qns/trajectory.hpp"

namespace qns {

/// A norm value together with where and how it was attained.  The value is
/// the maximum over the sampled ball family / time mesh, hence a lower bound
/// for the continuum supremum.
struct NormEstimate {
    double value = 0.0;
    std::optional<Ball> maximizing_ball;
    int n_balls = 0;
    int n_time_levels = 0;
    int resolution = 0;
};

/// Q_alpha seminorm: sup over balls of
///   ( r^{2a-n} sum_{y != z in B} |f(y)-f(z)|^2 / d(y,z)^{n+2a} * cellvol^2 )^{1/2}
/// with d the torus metric.  alpha in [0,1).
NormEstimate q_alpha_seminorm(const ScalarField& f, double alpha, const BallFamily& family);

/// Campanato-type mean oscillation:
///   ( r^{2(a-n)} sum_{y,z in B} |f(y)-f(z)|^2 * cellvol^2 )^{1/2}.
NormEstimate campanato_seminorm(const ScalarField& f, double alpha, const BallFamily& family);

/// BMO seminorm == campanato_seminorm at alpha = 0.
NormEstimate bmo_seminorm(const ScalarField& f, const BallFamily& family);

/// Heat-extension Carleson norm of Q_alpha^{-1} restricted to horizon T:
///   sup over balls with r^2 <= T of ( r^{2a-n} int_0^{r^2} int_B |e^{tD}f|^2 t^{-a} )^{1/2}.
/// The time integral keeps whole mesh cells only (upper edge within r^2),
/// which together with the ball restriction makes T-monotonicity exact.
/// Pass T = infinity for the uncapped norm.
NormEstimate q_inverse_norm(const ScalarField& f, double alpha, double T,
                            const BallFamily& family, const TimeMesh& mesh);

/// Morrey norm ( sup over balls of r^{2-n} int_B |f|^p )^{1/p}, p in {2,4}.
NormEstimate morrey_norm(const ScalarField& f, int p, const BallFamily& family);
/// Component sum, the vector-field convention used throughout.
NormEstimate morrey_norm(const VectorField& u, int p, const BallFamily& family);

/// sup over mesh samples of t^{1/2} max|e^{tD} f|.
NormEstimate besov_norm(const ScalarField& f, const TimeMesh& mesh);

enum class TrajectoryNormKind {
    x_alpha,    // sup t^{1/2}|g|_inf + Carleson part with weight t^{-alpha}
    x_morrey2,  // sup t^{1/2}|g|_inf + sup_t morrey_2(g(t))
    x_morrey4,  // sup t^{1/2}|g|_inf + sup_t t^{1/4} morrey_4(g(t))
};

/// The two summands of a trajectory norm, reported separately because the
/// bilinear estimates bound them separately.
struct TrajectoryNormParts {
    double sup_part = 0.0;       // sup_t t^{1/2} max|g(t,.)|
    double carleson_part = 0.0;  // Carleson or Morrey summand
    NormEstimate total;
};

TrajectoryNormParts trajectory_norm_parts(const Trajectory& g, TrajectoryNormKind kind,
                                          double alpha, const BallFamily& family);
NormEstimate trajectory_norm(const Trajectory& g, TrajectoryNormKind kind, double alpha,
                             const BallFamily& family);

/// Tent-space characterization of (-Delta)^{-a/2} Morrey membership:
///   sup over balls of ( r^{2a-n} int_0^r int_B |psi_t * f|^2 t^{1-2a} dt )^{1/2},
/// kernel dilation t capped per ball at the radius; vector kernel families
/// (1b, 2b) sum their components in quadrature.
NormEstimate tent_characterization(const ScalarField& f, double alpha, TentChoice choice,
                                   const BallFamily& family, const TimeMesh& dilation_mesh);

/// q_inverse_norm at each horizon of the decreasing list T_list.
std::vector<std::pair<double, double>> vanishing_profile(const ScalarField& f, double alpha,
                                                         const std::vector<double>& T_list,
                                                         const BallFamily& family,
                                                         const TimeMesh& mesh);

/// Shared Carleson-type accumulator: sup over balls of
///   r^{radius_exponent} * sum_cells weight(k, weight_exponent) * int_B I_k,
/// where I_k is the pointwise integrand at mesh sample k.  A ball
/// participates only when its cap (r^2, or r for dilation scales) is within
/// the horizon, and then integrates whole cells up to that cap; this keeps
/// the value exactly monotone in the horizon.
NormEstimate carleson_functional(const Grid& grid,
                                 const std::vector<std::vector<double>>& integrand_at_samples,
                                 const TimeMesh& mesh, double radius_exponent,
                                 double weight_exponent, bool sqrt_result,
                                 bool cap_at_radius_squared, double horizon,
                                 const BallFamily& family);

}  // namespace qns
