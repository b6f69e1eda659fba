#include "qns/duhamel.hpp"

#include <cmath>
#include <stdexcept>

#include "qns/spectral.hpp"

namespace qns {

namespace {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

const GaussRule& gauss_rule(int points) {
    static const GaussRule g2{{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
    static const GaussRule g3{{-0.7745966692414834, 0.0, 0.7745966692414834},
                              {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
    static const GaussRule g4{{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526},
                              {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538}};
    static const GaussRule g5{{-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640},
                              {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891}};
    switch (points) {
        case 2: return g2;
        case 3: return g3;
        case 4: return g4;
        case 5: return g5;
        default: throw std::invalid_argument("gauss_rule: supported orders are 2..5");
    }
}

void append_cell(std::vector<QuadratureNode>& out, double lo, double hi, const GaussRule& g) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < g.x.size(); ++i)
        out.push_back({mid + half * g.x[i], half * g.w[i]});
}

void require_same_mesh(const TimeMesh& a, const TimeMesh& b) {
    bool same = std::abs(a.t_cap() - b.t_cap()) <= 1e-12 * a.t_cap() &&
                std::abs(a.ratio() - b.ratio()) <= 1e-12 && a.levels() == b.levels();
    if (!same) throw std::invalid_argument("trajectories must share one time mesh");
}

}  // namespace

std::vector<QuadratureNode> graded_quadrature(double t, int cells, double ratio,
                                              int gauss_points) {
    if (!(t > 0.0)) throw std::invalid_argument("graded_quadrature: t must be positive");
    if (cells < 2 || cells % 2 != 0)
        throw std::invalid_argument("graded_quadrature: cells must be even and >= 2");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("graded_quadrature: ratio must lie in (0,1)");
    const GaussRule& g = gauss_rule(gauss_points);
    const int m = cells / 2;
    std::vector<QuadratureNode> out;
    out.reserve(static_cast<std::size_t>(cells) * g.x.size());

    // Left half (0, t/2]: geometric toward 0, innermost cell closed at 0.
    double top = 0.5 * t * std::pow(ratio, m - 1);
    append_cell(out, 0.0, top, g);
    for (int j = m - 2; j >= 0; --j) {
        double next = 0.5 * t * std::pow(ratio, j);
        append_cell(out, top, next, g);
        top = next;
    }
    // Right half [t/2, t): mirrored, innermost cell closed at t.
    for (int j = 0; j <= m - 2; ++j) {
        double lo = t - 0.5 * t * std::pow(ratio, j);
        double hi = t - 0.5 * t * std::pow(ratio, j + 1);
        append_cell(out, lo, hi, g);
    }
    append_cell(out, t - 0.5 * t * std::pow(ratio, m - 1), t, g);
    return out;
}

ScalarField duhamel_laplacian(const Trajectory& f, double t, int cells) {
    if (f.is_vector()) throw std::invalid_argument("duhamel_laplacian: scalar trajectory only");
    if (!(t > 0.0) || t > f.horizon() * (1.0 + 1e-9))
        throw std::invalid_argument("duhamel_laplacian: t beyond trajectory horizon");
    const Grid& g = f.grid();
    std::vector<std::complex<double>> acc(g.size(), {0.0, 0.0});
    for (const auto& node : graded_quadrature(t, cells)) {
        ScalarField fs = f.scalar_at(node.s, t);
        const auto& spec = fs.fourier();
        for (std::size_t i = 0; i < acc.size(); ++i) {
            auto xi = g.frequency(g.wavevector(i));
            double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            acc[i] += node.w * std::exp(-(t - node.s) * xi2) * (-xi2) * spec[i];
        }
    }
    return ScalarField::from_fourier(g, std::move(acc));
}

LemmaRatio lemma23_check(const Trajectory& f, double alpha, double T) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("lemma23_check: alpha must lie in [0,1)");
    if (!(T > 0.0) || T > f.horizon() * (1.0 + 1e-9))
        throw std::invalid_argument("lemma23_check: T beyond trajectory horizon");
    const TimeMesh& mesh = f.mesh();
    LemmaRatio out;
    double scale = 0.0;
    for (int k = 0; k < mesh.levels(); ++k) {
        if (mesh.edge(k) > T * (1.0 + 1e-12)) continue;
        double w = mesh.weight(k, alpha);
        double fn = f.scalar_node(k).l2_norm();
        double In = duhamel_laplacian(f, mesh.sample(k)).l2_norm();
        out.lhs += w * In * In;
        out.rhs += w * fn * fn;
        scale = std::max(scale, fn * fn);
    }
    if (out.rhs > 0.0) {
        out.ratio = out.lhs / out.rhs;
    } else if (out.lhs > 1e-12 * std::max(scale, 1e-300)) {
        throw std::runtime_error("lemma23_check: zero input with nonzero output");
    }
    return out;
}

std::vector<SchurMass> schur_kernel_integrals(double alpha,
                                              const std::vector<double>& zeta_values,
                                              const std::vector<double>& t_values) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("schur_kernel_integrals: alpha must lie in [0,1)");
    std::vector<SchurMass> table;
    for (double zeta : zeta_values) {
        const double z2 = zeta * zeta;
        SchurMass entry;
        entry.alpha = alpha;
        entry.zeta = zeta;
        for (double t : t_values) {
            // row: int_0^t (s/t)^{a/2} z^2 e^{-(t-s) z^2} ds
            double row = 0.0;
            for (const auto& n : graded_quadrature(t, 96))
                row += n.w * std::pow(n.s / t, 0.5 * alpha) * z2 * std::exp(-(t - n.s) * z2);
            entry.sup_row = std::max(entry.sup_row, row);

            // column at s = t: int_0^inf (s/(s+tau))^{a/2} z^2 e^{-tau z^2} dtau
            double s = t, col = 0.0;
            double tau_max = 60.0 / z2;
            for (const auto& n : graded_quadrature(tau_max, 96))
                col += n.w * std::pow(s / (s + n.s), 0.5 * alpha) * z2 * std::exp(-n.s * z2);
            entry.sup_col = std::max(entry.sup_col, col);
        }
        table.push_back(entry);
    }
    return table;
}

Lemma24Result lemma24_check(const Trajectory& f, double alpha, const BallFamily& family) {
    if (f.is_vector()) throw std::invalid_argument("lemma24_check: scalar trajectory only");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("lemma24_check: alpha must lie in [0,1)");
    if (std::abs(f.horizon() - 1.0) > 1e-9)
        throw std::invalid_argument("lemma24_check: trajectory horizon must be 1 (rescale time)");

    const TimeMesh& mesh = f.mesh();
    const Grid& g = f.grid();
    const int K = mesh.levels();
    const GaussRule& gr = gauss_rule(4);

    // Cumulative primitive A(t) = int_0^t f(s) ds at the mesh samples,
    // built upward from the smallest sample.
    std::vector<ScalarField> A(K, ScalarField(g));
    {
        ScalarField acc(g);
        double below = mesh.sample(K - 1);
        for (const auto& n : graded_quadrature(below, 24))
            acc = acc + f.scalar_at(n.s, below) * n.w;
        A[K - 1] = acc;
        for (int k = K - 2; k >= 0; --k) {
            double lo = mesh.sample(k + 1), hi = mesh.sample(k);
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < gr.x.size(); ++i)
                acc = acc + f.scalar_at(mid + half * gr.x[i], hi) * (half * gr.w[i]);
            A[k] = acc;
        }
    }

    Lemma24Result out;
    double scale = 0.0;
    for (int k = 0; k < K; ++k) {
        double w = mesh.weight(k, alpha);
        double ln = fractional_laplacian(heat_semigroup(A[k], mesh.sample(k)), 1.0).l2_norm();
        out.lhs += w * ln * ln;
        out.L1part += w * f.scalar_node(k).l1_norm();
        scale = std::max(scale, f.scalar_node(k).l2_norm());
    }

    std::vector<std::vector<double>> integrand(K);
    for (int k = 0; k < K; ++k) {
        const auto& v = f.scalar_node(k).values();
        integrand[k].resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) integrand[k][i] = std::abs(v[i]);
    }
    out.J = carleson_functional(g, integrand, mesh, 2.0 * alpha - g.dims(), alpha,
                                /*sqrt_result=*/false, /*cap_at_radius_squared=*/true,
                                /*horizon=*/1.0, family)
                .value;

    double denom = out.J * out.L1part;
    if (denom > 0.0) {
        out.ratio = out.lhs / denom;
    } else if (out.lhs > 1e-12 * std::max(scale, 1e-300)) {
        throw std::runtime_error("lemma24_check: degenerate bound with nonzero output");
    }
    return out;
}

VectorField bilinear_B(const Trajectory& u, const Trajectory& v, double t, int cells) {
    if (!u.is_vector() || !v.is_vector())
        throw std::invalid_argument("bilinear_B: vector trajectories required");
    if (u.grid() != v.grid()) throw std::invalid_argument("bilinear_B: grid mismatch");
    require_same_mesh(u.mesh(), v.mesh());
    if (!(t > 0.0) || t > u.horizon() * (1.0 + 1e-9))
        throw std::invalid_argument("bilinear_B: t beyond trajectory horizon");

    const Grid& g = u.grid();
    const int n = g.dims();
    std::vector<std::vector<std::complex<double>>> acc(
        n, std::vector<std::complex<double>>(g.size(), {0.0, 0.0}));

    for (const auto& node : graded_quadrature(t, cells)) {
        VectorField us = u.vector_at(node.s, t);
        VectorField vs = v.vector_at(node.s, t);
        // m_i = sum_j d_j (u_i v_j), then Leray project
        std::vector<ScalarField> m;
        for (int i = 0; i < n; ++i) {
            ScalarField mi = derivative(multiply_dealiased(us[i], vs[0]), 0);
            for (int j = 1; j < n; ++j)
                mi = mi + derivative(multiply_dealiased(us[i], vs[j]), j);
            m.push_back(mi);
        }
        VectorField pm = leray_project(VectorField(std::move(m)));
        const double tau = t - node.s;
        for (int i = 0; i < n; ++i) {
            const auto& spec = pm[i].fourier();
            for (std::size_t idx = 0; idx < spec.size(); ++idx) {
                auto xi = g.frequency(g.wavevector(idx));
                double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                acc[i][idx] += node.w * std::exp(-tau * xi2) * spec[idx];
            }
        }
    }

    std::vector<ScalarField> comps;
    for (int i = 0; i < n; ++i) comps.push_back(ScalarField::from_fourier(g, std::move(acc[i])));
    return VectorField(std::move(comps), true);
}

BilinearBounds bilinear_bounds_check(const Trajectory& u, const Trajectory& v, double alpha,
                                     double T, const BallFamily& family, int cells) {
    if (std::abs(T - u.horizon()) > 1e-9 * T)
        throw std::invalid_argument("bilinear_bounds_check: T must equal the trajectory horizon");
    BilinearBounds out;
    out.u_norm = trajectory_norm(u, TrajectoryNormKind::x_alpha, alpha, family).value;
    out.v_norm = trajectory_norm(v, TrajectoryNormKind::x_alpha, alpha, family).value;
    const double denom = out.u_norm * out.v_norm;
    if (denom == 0.0) return out;

    const TimeMesh& mesh = u.mesh();
    std::vector<VectorField> B_nodes(mesh.levels(), VectorField(u.grid()));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < mesh.levels(); ++k)
        B_nodes[k] = bilinear_B(u, v, mesh.sample(k), cells);

    double linf = 0.0;
    for (int k = 0; k < mesh.levels(); ++k)
        linf = std::max(linf, std::sqrt(mesh.sample(k)) * B_nodes[k].max_abs());
    Trajectory B_traj(mesh, std::move(B_nodes));
    auto parts = trajectory_norm_parts(B_traj, TrajectoryNormKind::x_alpha, alpha, family);

    out.linf_ratio = linf / denom;
    out.carleson_ratio = parts.carleson_part / denom;
    return out;
}

ScalarField pressure_from_velocity(const VectorField& u) {
    if (u.divergence_defect() > 1e-8)
        throw std::invalid_argument("pressure_from_velocity: velocity must be divergence-free");
    const int n = u.dims();
    ScalarField s(u.grid());
    for (int i = 0; i < n; ++i) {
        ScalarField di(u.grid());
        for (int j = 0; j < n; ++j)
            di = di + derivative(multiply_dealiased(u[i], u[j]), j);
        s = s + derivative(di, i);
    }
    return inverse_laplacian(s);
}

}  // namespace qns
