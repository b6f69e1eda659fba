#pragma once

#include <complex>
#include <vector>

#include "qns/grid.hpp"

namespace qns {

/// Forward DFT of real node values, normalized so the output holds Fourier
/// series coefficients: f(x) = sum_k fhat(k) exp(i 2pi k.x / L).
std::vector<std::complex<double>> fft_forward(const Grid& grid,
                                              const std::vector<double>& values);

/// Inverse of fft_forward; returns the real part of the synthesis sum.
std::vector<double> fft_backward(const Grid& grid,
                                 const std::vector<std::complex<double>>& spec);

}  // namespace qns
