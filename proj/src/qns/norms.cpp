#include "qns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace qns {

namespace {

// Integer-offset stencil of nodes inside a ball of radius r centered on a
// node.  Ball radii are capped at L/8, so offsets never wrap ambiguously.
struct Stencil {
    std::vector<std::array<int, 3>> offsets;
};

Stencil make_stencil(const Grid& g, double r) {
    Stencil s;
    std::array<int, 3> reach{0, 0, 0};
    for (int a = 0; a < g.dims(); ++a)
        reach[a] = static_cast<int>(std::ceil(r / g.spacing(a)));
    std::array<int, 3> d{0, 0, 0};
    int z_lo = (g.dims() == 3) ? -reach[2] : 0;
    int z_hi = (g.dims() == 3) ? reach[2] : 0;
    for (d[0] = -reach[0]; d[0] <= reach[0]; ++d[0])
        for (d[1] = -reach[1]; d[1] <= reach[1]; ++d[1])
            for (d[2] = z_lo; d[2] <= z_hi; ++d[2]) {
                double dist2 = 0.0;
                for (int a = 0; a < g.dims(); ++a) {
                    double x = d[a] * g.spacing(a);
                    dist2 += x * x;
                }
                if (dist2 < r * r) s.offsets.push_back(d);
            }
    return s;
}

// Flat node indices inside a ball; stencil fast path for on-node centers.
std::vector<std::size_t> ball_nodes(const Grid& g, const Ball& b, const Stencil* stencil) {
    std::vector<std::size_t> nodes;
    std::array<int, 3> ci{0, 0, 0};
    bool on_node = true;
    for (int a = 0; a < g.dims(); ++a) {
        double q = b.center[a] / g.spacing(a);
        ci[a] = static_cast<int>(std::lround(q));
        if (std::abs(q - ci[a]) > 1e-9) on_node = false;
    }
    if (on_node && stencil) {
        nodes.reserve(stencil->offsets.size());
        for (const auto& d : stencil->offsets)
            nodes.push_back(g.flat_index({ci[0] + d[0], ci[1] + d[1], ci[2] + d[2]}));
        return nodes;
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.torus_distance(g.node(i), b.center) < b.radius) nodes.push_back(i);
    return nodes;
}

// Groups the family by radius so stencils are built once per radius.
std::map<double, Stencil> stencils_for(const Grid& g, const BallFamily& family) {
    std::map<double, Stencil> out;
    for (const auto& b : family.balls())
        if (!out.count(b.radius)) out.emplace(b.radius, make_stencil(g, b.radius));
    return out;
}

NormEstimate finalize(const BallFamily& family, const Grid& g, int n_time_levels,
                      const std::vector<double>& per_ball) {
    NormEstimate est;
    est.n_balls = static_cast<int>(family.balls().size());
    est.n_time_levels = n_time_levels;
    est.resolution = g.res(0);
    for (std::size_t i = 0; i < per_ball.size(); ++i) {
        if (per_ball[i] > est.value) {
            est.value = per_ball[i];
            est.maximizing_ball = family.balls()[i];
        }
    }
    return est;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0,1)");
}

}  // namespace

NormEstimate carleson_functional(const Grid& g,
                                 const std::vector<std::vector<double>>& integrand,
                                 const TimeMesh& mesh, double radius_exponent,
                                 double weight_exponent, bool sqrt_result,
                                 bool cap_at_radius_squared, double horizon,
                                 const BallFamily& family) {
    const auto stencils = stencils_for(g, family);
    const double cellvol = g.cell_volume();
    const auto& balls = family.balls();
    std::vector<double> per_ball(balls.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(balls.size()); ++bi) {
        const Ball& b = balls[bi];
        double cap = cap_at_radius_squared ? b.radius * b.radius : b.radius;
        // The horizon restricts which balls participate (r^2 <= T); each
        // participating ball integrates its full range.  This is what makes
        // the truncated norms vanish as the horizon shrinks.
        if (cap > horizon * (1.0 + 1e-12)) {
            per_ball[bi] = 0.0;
            continue;
        }
        auto nodes = ball_nodes(g, b, &stencils.at(b.radius));
        double acc = 0.0;
        for (int k = 0; k < mesh.levels(); ++k) {
            if (mesh.edge(k) > cap * (1.0 + 1e-12)) continue;  // whole cells only
            double cell_sum = 0.0;
            const auto& I = integrand[k];
            for (auto idx : nodes) cell_sum += I[idx];
            acc += mesh.weight(k, weight_exponent) * cell_sum * cellvol;
        }
        double v = std::pow(b.radius, radius_exponent) * acc;
        per_ball[bi] = sqrt_result ? std::sqrt(std::max(0.0, v)) : v;
    }
    return finalize(family, g, mesh.levels(), per_ball);
}

NormEstimate q_alpha_seminorm(const ScalarField& f, double alpha, const BallFamily& family) {
    check_alpha(alpha);
    const Grid& g = f.grid();
    const int n = g.dims();
    const auto& v = f.values();
    const double cellvol2 = g.cell_volume() * g.cell_volume();
    const auto stencils = stencils_for(g, family);

    // Distance kernel d^{-(n+2a)} tabulated over integer offsets per radius.
    struct Kernel {
        int reach[3];
        std::vector<double> w;  // indexed over (2*reach+1)^dims
    };
    std::map<double, Kernel> kernels;
    for (const auto& [r, st] : stencils) {
        (void)st;
        Kernel ker;
        for (int a = 0; a < 3; ++a)
            ker.reach[a] = (a < n) ? static_cast<int>(std::ceil(2.0 * r / g.spacing(a))) : 0;
        int nx = 2 * ker.reach[0] + 1, ny = 2 * ker.reach[1] + 1, nz = 2 * ker.reach[2] + 1;
        ker.w.assign(static_cast<std::size_t>(nx) * ny * nz, 0.0);
        for (int dx = -ker.reach[0]; dx <= ker.reach[0]; ++dx)
            for (int dy = -ker.reach[1]; dy <= ker.reach[1]; ++dy)
                for (int dz = -ker.reach[2]; dz <= ker.reach[2]; ++dz) {
                    double dist2 = dx * g.spacing(0) * dx * g.spacing(0) +
                                   dy * g.spacing(1) * dy * g.spacing(1);
                    if (n == 3) dist2 += dz * g.spacing(2) * dz * g.spacing(2);
                    std::size_t idx =
                        (static_cast<std::size_t>(dx + ker.reach[0]) * ny + (dy + ker.reach[1])) *
                            nz +
                        (dz + ker.reach[2]);
                    ker.w[idx] = dist2 > 0.0
                                     ? std::pow(dist2, -0.5 * (n + 2.0 * alpha))
                                     : 0.0;  // diagonal excluded
                }
        kernels.emplace(r, std::move(ker));
    }

    const auto& balls = family.balls();
    std::vector<double> per_ball(balls.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(balls.size()); ++bi) {
        const Ball& b = balls[bi];
        const Kernel& ker = kernels.at(b.radius);
        const Stencil& st = stencils.at(b.radius);
        auto nodes = ball_nodes(g, b, &st);
        // Offsets of the i-th ball node relative to the center follow the
        // stencil ordering whenever the fast path applied.
        const bool fast = nodes.size() == st.offsets.size();
        const int ny = 2 * ker.reach[1] + 1, nz = 2 * ker.reach[2] + 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double fi = v[nodes[i]];
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                double diff = fi - v[nodes[j]];
                double w;
                if (fast) {
                    const auto& oi = st.offsets[i];
                    const auto& oj = st.offsets[j];
                    std::size_t idx = (static_cast<std::size_t>(oi[0] - oj[0] + ker.reach[0]) * ny +
                                       (oi[1] - oj[1] + ker.reach[1])) *
                                          nz +
                                      (oi[2] - oj[2] + ker.reach[2]);
                    w = ker.w[idx];
                } else {
                    double d = g.torus_distance(g.node(nodes[i]), g.node(nodes[j]));
                    w = std::pow(d, -(n + 2.0 * alpha));
                }
                acc += diff * diff * w;
            }
        }
        acc *= 2.0;  // unordered pairs counted once above
        per_ball[bi] =
            std::sqrt(std::pow(b.radius, 2.0 * alpha - n) * acc * cellvol2);
    }
    return finalize(family, g, 0, per_ball);
}

NormEstimate campanato_seminorm(const ScalarField& f, double alpha, const BallFamily& family) {
    const Grid& g = f.grid();
    const int n = g.dims();
    const auto& v = f.values();
    const double cellvol2 = g.cell_volume() * g.cell_volume();
    const auto stencils = stencils_for(g, family);
    const auto& balls = family.balls();
    std::vector<double> per_ball(balls.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(balls.size()); ++bi) {
        const Ball& b = balls[bi];
        auto nodes = ball_nodes(g, b, &stencils.at(b.radius));
        // sum_{y,z} (f(y)-f(z))^2 = 2 m sum f^2 - 2 (sum f)^2
        double s1 = 0.0, s2 = 0.0;
        for (auto idx : nodes) {
            s1 += v[idx];
            s2 += v[idx] * v[idx];
        }
        double m = static_cast<double>(nodes.size());
        double osc = 2.0 * (m * s2 - s1 * s1);
        per_ball[bi] =
            std::sqrt(std::max(0.0, std::pow(b.radius, 2.0 * (alpha - n)) * osc * cellvol2));
    }
    return finalize(family, g, 0, per_ball);
}

NormEstimate bmo_seminorm(const ScalarField& f, const BallFamily& family) {
    return campanato_seminorm(f, 0.0, family);
}

NormEstimate q_inverse_norm(const ScalarField& f, double alpha, double T,
                            const BallFamily& family, const TimeMesh& mesh) {
    check_alpha(alpha);
    if (!(T > 0.0)) throw std::invalid_argument("q_inverse_norm: T must be positive");
    const Grid& g = f.grid();
    std::vector<std::vector<double>> integrand(mesh.levels());
    for (int k = 0; k < mesh.levels(); ++k) {
        ScalarField hf = heat_semigroup(f, mesh.sample(k));
        const auto& hv = hf.values();
        integrand[k].resize(hv.size());
        for (std::size_t i = 0; i < hv.size(); ++i) integrand[k][i] = hv[i] * hv[i];
    }
    return carleson_functional(g, integrand, mesh, 2.0 * alpha - g.dims(), alpha, true, true,
                               T, family);
}

NormEstimate morrey_norm(const ScalarField& f, int p, const BallFamily& family) {
    if (p != 2 && p != 4) throw std::invalid_argument("morrey_norm: p must be 2 or 4");
    const Grid& g = f.grid();
    const auto& v = f.values();
    const auto stencils = stencils_for(g, family);
    const auto& balls = family.balls();
    std::vector<double> per_ball(balls.size(), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(balls.size()); ++bi) {
        const Ball& b = balls[bi];
        auto nodes = ball_nodes(g, b, &stencils.at(b.radius));
        double acc = 0.0;
        for (auto idx : nodes) {
            double a2 = v[idx] * v[idx];
            acc += (p == 2) ? a2 : a2 * a2;
        }
        acc *= g.cell_volume() * std::pow(b.radius, 2.0 - g.dims());
        per_ball[bi] = std::pow(acc, 1.0 / p);
    }
    return finalize(family, g, 0, per_ball);
}

NormEstimate morrey_norm(const VectorField& u, int p, const BallFamily& family) {
    NormEstimate total;
    double largest = -1.0;
    for (const auto& c : u.components()) {
        NormEstimate e = morrey_norm(c, p, family);
        if (e.value > largest) {
            largest = e.value;
            total.maximizing_ball = e.maximizing_ball;
        }
        total.value += e.value;
        total.n_balls = e.n_balls;
        total.resolution = e.resolution;
    }
    return total;
}

NormEstimate besov_norm(const ScalarField& f, const TimeMesh& mesh) {
    NormEstimate est;
    est.n_time_levels = mesh.levels();
    est.resolution = f.grid().res(0);
    // The sup scans the mesh nodes t_k = T rho^k themselves (no weighting
    // is involved), so the horizon T is included.
    for (int k = 0; k < mesh.levels(); ++k) {
        double t = mesh.edge(k);
        double v = std::sqrt(t) * heat_semigroup(f, t).max_abs();
        est.value = std::max(est.value, v);
    }
    return est;
}

TrajectoryNormParts trajectory_norm_parts(const Trajectory& g, TrajectoryNormKind kind,
                                          double alpha, const BallFamily& family) {
    if (g.size() == 0) throw std::invalid_argument("trajectory_norm: empty trajectory");
    if (g.is_vector()) {
        // Component sum, matching the (X)^n convention.
        TrajectoryNormParts total;
        for (int a = 0; a < g.vector_node(0).dims(); ++a) {
            std::vector<ScalarField> comp;
            for (int k = 0; k < g.size(); ++k) comp.push_back(g.vector_node(k)[a]);
            Trajectory cg(g.mesh(), std::move(comp));
            auto parts = trajectory_norm_parts(cg, kind, alpha, family);
            total.sup_part += parts.sup_part;
            total.carleson_part += parts.carleson_part;
            if (!total.total.maximizing_ball ||
                parts.total.value > total.total.value)
                total.total.maximizing_ball = parts.total.maximizing_ball;
            total.total.value += parts.total.value;
            total.total.n_balls = parts.total.n_balls;
            total.total.n_time_levels = parts.total.n_time_levels;
            total.total.resolution = parts.total.resolution;
        }
        return total;
    }

    const Grid& grid = g.grid();
    TrajectoryNormParts parts;
    for (int k = 0; k < g.size(); ++k)
        parts.sup_part =
            std::max(parts.sup_part, std::sqrt(g.time(k)) * g.scalar_node(k).max_abs());

    NormEstimate second;
    switch (kind) {
        case TrajectoryNormKind::x_alpha: {
            check_alpha(alpha);
            std::vector<std::vector<double>> integrand(g.mesh().levels());
            for (int k = 0; k < g.size(); ++k) {
                const auto& v = g.scalar_node(k).values();
                integrand[k].resize(v.size());
                for (std::size_t i = 0; i < v.size(); ++i) integrand[k][i] = v[i] * v[i];
            }
            second = carleson_functional(grid, integrand, g.mesh(), 2.0 * alpha - grid.dims(),
                                         alpha, true, true, g.horizon(), family);
            break;
        }
        case TrajectoryNormKind::x_morrey2: {
            for (int k = 0; k < g.size(); ++k) {
                NormEstimate e = morrey_norm(g.scalar_node(k), 2, family);
                if (e.value > second.value) second = e;
            }
            break;
        }
        case TrajectoryNormKind::x_morrey4: {
            for (int k = 0; k < g.size(); ++k) {
                NormEstimate e = morrey_norm(g.scalar_node(k), 4, family);
                e.value *= std::pow(g.time(k), 0.25);
                if (e.value > second.value) second = e;
            }
            break;
        }
    }
    parts.carleson_part = second.value;
    parts.total = second;
    parts.total.value = parts.sup_part + parts.carleson_part;
    parts.total.n_time_levels = g.mesh().levels();
    parts.total.resolution = grid.res(0);
    return parts;
}

NormEstimate trajectory_norm(const Trajectory& g, TrajectoryNormKind kind, double alpha,
                             const BallFamily& family) {
    return trajectory_norm_parts(g, kind, alpha, family).total;
}

NormEstimate tent_characterization(const ScalarField& f, double alpha, TentChoice choice,
                                   const BallFamily& family, const TimeMesh& dilation_mesh) {
    check_alpha(alpha);
    const Grid& g = f.grid();
    std::vector<std::vector<double>> integrand(dilation_mesh.levels());
    for (int k = 0; k < dilation_mesh.levels(); ++k) {
        auto comps = tent_convolution(f, choice, dilation_mesh.sample(k));
        integrand[k].assign(g.size(), 0.0);
        for (const auto& c : comps) {
            const auto& v = c.values();
            for (std::size_t i = 0; i < v.size(); ++i) integrand[k][i] += v[i] * v[i];
        }
    }
    // weight t^{1-2a} dt, dilation capped per ball at the radius itself
    return carleson_functional(g, integrand, dilation_mesh, 2.0 * alpha - g.dims(),
                               2.0 * alpha - 1.0, true, false,
                               std::numeric_limits<double>::infinity(), family);
}

std::vector<std::pair<double, double>> vanishing_profile(const ScalarField& f, double alpha,
                                                         const std::vector<double>& T_list,
                                                         const BallFamily& family,
                                                         const TimeMesh& mesh) {
    for (std::size_t i = 1; i < T_list.size(); ++i)
        if (!(T_list[i] < T_list[i - 1]))
            throw std::invalid_argument("vanishing_profile: T_list must be decreasing");
    std::vector<std::pair<double, double>> out;
    for (double T : T_list)
        out.emplace_back(T, q_inverse_norm(f, alpha, T, family, mesh).value);
    return out;
}

}  // namespace qns
