#include "qns/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qns {
namespace oracle {

ScalarField direct_heat_convolution(const ScalarField& f, double t, int image_count) {
    if (!(t > 0.0)) throw std::invalid_argument("direct_heat_convolution: t must be positive");
    const Grid& g = f.grid();
    const int n = g.dims();
    const double L = g.box();

    // Farthest source already accounted for sits within L/2 per axis; the
    // nearest neglected image is at least (image_count - 1/2) L away.
    double nearest_missing = (image_count + 0.5) * L - 0.5 * L;
    double tail = std::exp(-nearest_missing * nearest_missing / (4.0 * t));
    if (tail > 1e-14)
        throw std::invalid_argument(
            "direct_heat_convolution: image count too small for this diffusion time");

    // Separable 1D kernel tables over node offsets and images.
    std::vector<std::vector<double>> k1d(n);
    for (int a = 0; a < n; ++a) {
        int res = g.res(a);
        double h = g.spacing(a);
        k1d[a].assign(res, 0.0);
        for (int d = 0; d < res; ++d)
            for (int img = -image_count; img <= image_count; ++img) {
                double x = d * h + img * L;
                k1d[a][d] += std::exp(-x * x / (4.0 * t));
            }
    }

    const auto& v = f.values();
    std::vector<double> out(v.size(), 0.0);
    double mass = 0.0;

    if (n == 2) {
        int r0 = g.res(0), r1 = g.res(1);
        for (int d0 = 0; d0 < r0; ++d0)
            for (int d1 = 0; d1 < r1; ++d1) mass += k1d[0][d0] * k1d[1][d1];
#pragma omp parallel for schedule(static)
        for (int i0 = 0; i0 < r0; ++i0)
            for (int i1 = 0; i1 < r1; ++i1) {
                double acc = 0.0;
                for (int j0 = 0; j0 < r0; ++j0) {
                    double kx = k1d[0][std::abs(((i0 - j0) % r0 + r0) % r0)];
                    const double* row = &v[static_cast<std::size_t>(j0) * r1];
                    for (int j1 = 0; j1 < r1; ++j1)
                        acc += kx * k1d[1][((i1 - j1) % r1 + r1) % r1] * row[j1];
                }
                out[static_cast<std::size_t>(i0) * r1 + i1] = acc;
            }
    } else {
        int r0 = g.res(0), r1 = g.res(1), r2 = g.res(2);
        for (int d0 = 0; d0 < r0; ++d0)
            for (int d1 = 0; d1 < r1; ++d1)
                for (int d2 = 0; d2 < r2; ++d2)
                    mass += k1d[0][d0] * k1d[1][d1] * k1d[2][d2];
#pragma omp parallel for schedule(static)
        for (int i0 = 0; i0 < r0; ++i0)
            for (int i1 = 0; i1 < r1; ++i1)
                for (int i2 = 0; i2 < r2; ++i2) {
                    double acc = 0.0;
                    for (int j0 = 0; j0 < r0; ++j0)
                        for (int j1 = 0; j1 < r1; ++j1) {
                            double kxy = k1d[0][((i0 - j0) % r0 + r0) % r0] *
                                         k1d[1][((i1 - j1) % r1 + r1) % r1];
                            const double* row =
                                &v[(static_cast<std::size_t>(j0) * r1 + j1) * r2];
                            for (int j2 = 0; j2 < r2; ++j2)
                                acc += kxy * k1d[2][((i2 - j2) % r2 + r2) % r2] * row[j2];
                        }
                    out[(static_cast<std::size_t>(i0) * r1 + i1) * r2 + i2] = acc;
                }
    }

    // Unit-mass normalization keeps constants fixed and the t -> 0 limit an
    // approximate identity even when the kernel is narrower than a cell.
    for (auto& x : out) x /= mass;
    return ScalarField::from_values(g, std::move(out));
}

ScalarField spectral_upsample(const ScalarField& f, int refine) {
    if (refine < 1) throw std::invalid_argument("spectral_upsample: refine must be >= 1");
    if (refine == 1) return f;
    const Grid& g = f.grid();
    Grid fine(g.dims(), {g.res(0) * refine, g.res(1) * refine, g.res(2) * refine}, g.box());
    const auto& spec = f.fourier();
    std::vector<std::complex<double>> out(fine.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto k = g.wavevector(i);
        out[fine.flat_index({k[0], k[1], k[2]})] = spec[i];
    }
    return ScalarField::from_fourier(fine, std::move(out));
}

namespace {

double double_sum(const ScalarField& f, const Ball& ball, int refine, bool weighted,
                  double alpha) {
    ScalarField fine = spectral_upsample(f, refine);
    const Grid& g = fine.grid();
    const int n = g.dims();
    const auto& v = fine.values();

    std::vector<std::size_t> nodes;
    std::vector<std::array<double, 3>> pos;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto x = g.node(i);
        if (g.torus_distance(x, ball.center) < ball.radius) {
            nodes.push_back(i);
            pos.push_back(x);
        }
    }

    double acc = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : acc)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nodes.size()); ++i) {
        double local = 0.0;
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            double diff = v[nodes[i]] - v[nodes[j]];
            double term = diff * diff;
            if (weighted) {
                double d = g.torus_distance(pos[i], pos[j]);
                term *= std::pow(d, -(n + 2.0 * alpha));
            }
            local += term;
        }
        acc += local;
    }
    acc *= 2.0;

    double cellvol2 = g.cell_volume() * g.cell_volume();
    double radius_power = weighted ? 2.0 * alpha - n : 2.0 * (alpha - n);
    return std::sqrt(std::pow(ball.radius, radius_power) * acc * cellvol2);
}

}  // namespace

double direct_double_sum_q(const ScalarField& f, double alpha, const Ball& ball, int refine) {
    return double_sum(f, ball, refine, true, alpha);
}

double direct_double_sum_campanato(const ScalarField& f, double alpha, const Ball& ball,
                                   int refine) {
    return double_sum(f, ball, refine, false, alpha);
}

double dense_time_quadrature(const std::function<double(double)>& g, double alpha, double T,
                             int levels) {
    if (!(T > 0.0)) throw std::invalid_argument("dense_time_quadrature: T must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("dense_time_quadrature: alpha must lie in [0,1)");
    const double ratio = std::pow(0.5, 0.25);  // 4x the standard log density
    double acc = 0.0;
    double hi = T;
    for (int k = 0; k < levels; ++k) {
        double lo = hi * ratio;
        double w = alpha == 0.0 ? hi - lo
                                : (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) /
                                      (1.0 - alpha);
        acc += w * g(std::sqrt(hi * lo));
        hi = lo;
    }
    // terminal cell [0, hi], sampled at its upper edge
    double w_tail = alpha == 0.0 ? hi : std::pow(hi, 1.0 - alpha) / (1.0 - alpha);
    acc += w_tail * g(hi);
    return acc;
}

}  // namespace oracle
}  // namespace qns
