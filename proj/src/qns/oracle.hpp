#pragma once

#include <functional>

#include "qns/ball_family.hpp"
#include "qns/field.hpp"

namespace qns {
namespace oracle {

/// Heat evolution by direct quadrature of the Gaussian kernel summed over
/// periodic images, normalized to unit discrete mass.  O(N^2) in the node
/// count; the tail beyond `image_count` shells must be below 1e-14.
ScalarField direct_heat_convolution(const ScalarField& f, double t, int image_count = 3);

/// Q_alpha ball contribution by brute-force double sum on a spectrally
/// upsampled lattice (`refine` times the resolution per axis).
double direct_double_sum_q(const ScalarField& f, double alpha, const Ball& ball,
                           int refine = 2);

/// Campanato-type mean oscillation by the same brute-force route.
double direct_double_sum_campanato(const ScalarField& f, double alpha, const Ball& ball,
                                   int refine = 2);

/// int_0^T g(t) t^{-alpha} dt on a dense log-uniform mesh (>= 4x the
/// standard node density), terminal cell closed at zero.
double dense_time_quadrature(const std::function<double(double)>& g, double alpha, double T,
                             int levels = 96);

/// Band-limited upsampling by zero-padding the spectrum (exact for fields
/// within the source band).
ScalarField spectral_upsample(const ScalarField& f, int refine);

}  // namespace oracle
}  // namespace qns
