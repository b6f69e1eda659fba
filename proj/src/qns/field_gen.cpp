#include "qns/field_gen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qns/spectral.hpp"

namespace qns {

namespace {

constexpr double kSupportTol = 1e-12;

// Deterministic standard normals: Box-Muller over mt19937_64, so streams are
// identical across platforms and standard libraries.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        // in (0,1], avoids log(0)
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
    }
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

bool in_central_cube(const Grid& g, const std::array<double, 3>& x) {
    for (int a = 0; a < g.dims(); ++a) {
        double d = x[a] - 0.5 * g.box();
        d -= g.box() * std::round(d / g.box());
        if (std::abs(d) > 0.25 * g.box()) return false;
    }
    return true;
}

void check_bump_support(const Grid& g, const ScalarField& f) {
    const auto& v = f.values();
    double peak = f.max_abs();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!in_central_cube(g, g.node(i)) && std::abs(v[i]) > kSupportTol * peak)
            throw std::invalid_argument(
                "gaussian_bump: width too large for central-cube support");
}

ScalarField make_bump(const Grid& g, const FieldSpec& spec) {
    std::array<double, 3> c = spec.center;
    bool default_center = c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0;
    if (default_center)
        for (int a = 0; a < g.dims(); ++a) c[a] = 0.5 * g.box();
    double w = spec.width > 0.0 ? spec.width : g.box() / 36.0;

    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double d = g.torus_distance(g.node(i), c);
        v[i] = spec.amplitude * std::exp(-0.5 * d * d / (w * w));
    }
    ScalarField f = ScalarField::from_values(g, std::move(v));
    if (spec.amplitude != 0.0) check_bump_support(g, f);
    return f;
}

ScalarField make_single_mode(const Grid& g, const FieldSpec& spec) {
    for (int a = 0; a < g.dims(); ++a)
        if (4 * std::abs(spec.mode[a]) > g.res(a))
            throw std::invalid_argument("single_mode: wavevector beyond N/4 band limit");
    std::vector<double> v(g.size());
    const double c = 2.0 * std::numbers::pi / g.box();
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto x = g.node(i);
        double arg = spec.phase;
        for (int a = 0; a < g.dims(); ++a) arg += c * spec.mode[a] * x[a];
        v[i] = spec.amplitude * std::cos(arg);
    }
    return ScalarField::from_values(g, std::move(v));
}

ScalarField make_random_smooth(const Grid& g, std::uint64_t seed, double decay) {
    NormalStream normals(seed);
    std::vector<std::complex<double>> spec(g.size(), {0.0, 0.0});
    const int band_sq = (g.res(0) / 4) * (g.res(0) / 4);
    // Walk flat indices in order; assign each Hermitian pair once, from the
    // representative whose wavevector is lexicographically positive.
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.wavevector(i);
        int k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (k2 == 0 || k2 > band_sq) continue;
        bool representative =
            (k[0] > 0) || (k[0] == 0 && k[1] > 0) || (k[0] == 0 && k[1] == 0 && k[2] > 0);
        if (!representative) continue;
        double mag = std::pow(1.0 + std::sqrt(static_cast<double>(k2)), -decay);
        std::complex<double> c(normals.next() * mag, normals.next() * mag);
        spec[i] = c;
        spec[g.flat_index({-k[0], -k[1], -k[2]})] = std::conj(c);
    }
    ScalarField f = ScalarField::from_fourier(g, std::move(spec));
    double peak = f.max_abs();
    if (peak == 0.0) return f;
    return f * (1.0 / peak);
}

VectorField make_taylor_green(const Grid& g, double amplitude) {
    const double c = 2.0 * std::numbers::pi / g.box();
    std::vector<double> u0(g.size()), u1(g.size());
    std::vector<double> u2(g.dims() == 3 ? g.size() : 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto x = g.node(i);
        if (g.dims() == 2) {
            u0[i] = amplitude * std::cos(c * x[0]) * std::sin(c * x[1]);
            u1[i] = -amplitude * std::sin(c * x[0]) * std::cos(c * x[1]);
        } else {
            u0[i] = amplitude * std::cos(c * x[0]) * std::sin(c * x[1]) * std::sin(c * x[2]);
            u1[i] = -amplitude * std::sin(c * x[0]) * std::cos(c * x[1]) * std::sin(c * x[2]);
            u2[i] = 0.0;
        }
    }
    std::vector<ScalarField> comps;
    comps.push_back(ScalarField::from_values(g, std::move(u0)));
    comps.push_back(ScalarField::from_values(g, std::move(u1)));
    if (g.dims() == 3) comps.push_back(ScalarField::from_values(g, std::move(u2)));
    return VectorField(std::move(comps), true);
}

}  // namespace

std::string field_kind_name(FieldKind kind) {
    switch (kind) {
        case FieldKind::gaussian_bump: return "gaussian_bump";
        case FieldKind::single_mode: return "single_mode";
        case FieldKind::taylor_green: return "taylor_green";
        case FieldKind::random_smooth: return "random_smooth";
        case FieldKind::random_div_free: return "random_div_free";
    }
    return "?";
}

FieldSpec parse_field_spec(const std::string& text) {
    // "kind key=value key=value ...", e.g.
    // "gaussian_bump width=0.03 amplitude=2" or "single_mode kx=2 ky=1".
    std::istringstream is(text);
    std::string kind;
    if (!(is >> kind)) throw std::invalid_argument("field spec: empty");
    FieldSpec spec;
    if (kind == "gaussian_bump") spec.kind = FieldKind::gaussian_bump;
    else if (kind == "single_mode") spec.kind = FieldKind::single_mode;
    else if (kind == "taylor_green") spec.kind = FieldKind::taylor_green;
    else if (kind == "random_smooth") spec.kind = FieldKind::random_smooth;
    else if (kind == "random_div_free") spec.kind = FieldKind::random_div_free;
    else throw std::invalid_argument("field spec: unknown kind " + kind);

    std::string kv;
    while (is >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("field spec: expected key=value, got " + kv);
        std::string key = kv.substr(0, eq);
        double val = std::stod(kv.substr(eq + 1));
        if (key == "width") spec.width = val;
        else if (key == "amplitude") spec.amplitude = val;
        else if (key == "phase") spec.phase = val;
        else if (key == "cx") spec.center[0] = val;
        else if (key == "cy") spec.center[1] = val;
        else if (key == "cz") spec.center[2] = val;
        else if (key == "kx") spec.mode[0] = static_cast<int>(val);
        else if (key == "ky") spec.mode[1] = static_cast<int>(val);
        else if (key == "kz") spec.mode[2] = static_cast<int>(val);
        else if (key == "seed") spec.seed = static_cast<std::uint64_t>(val);
        else if (key == "decay") spec.spectral_decay = val;
        else throw std::invalid_argument("field spec: unknown key " + key);
    }
    return spec;
}

ScalarField generate_scalar(const Grid& grid, const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldKind::gaussian_bump: return make_bump(grid, spec);
        case FieldKind::single_mode: return make_single_mode(grid, spec);
        case FieldKind::random_smooth:
            return make_random_smooth(grid, spec.seed, spec.spectral_decay);
        default:
            throw std::invalid_argument("generate_scalar: " + field_kind_name(spec.kind) +
                                        " is a vector kind");
    }
}

VectorField generate_vector(const Grid& grid, const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldKind::taylor_green: return make_taylor_green(grid, spec.amplitude);
        case FieldKind::random_div_free: {
            std::vector<ScalarField> comps;
            for (int a = 0; a < grid.dims(); ++a)
                comps.push_back(make_random_smooth(grid, spec.seed + 7919 * (a + 1),
                                                   spec.spectral_decay) *
                                spec.amplitude);
            return leray_project(VectorField(std::move(comps)));
        }
        default:
            throw std::invalid_argument("generate_vector: " + field_kind_name(spec.kind) +
                                        " is a scalar kind");
    }
}

std::vector<std::pair<std::string, ScalarField>> scalar_corpus(const Grid& grid) {
    const double L = grid.box();
    std::vector<std::pair<std::string, ScalarField>> out;

    FieldSpec bump1;
    bump1.kind = FieldKind::gaussian_bump;
    bump1.width = L / 36.0;
    out.emplace_back("bump_centered", generate_scalar(grid, bump1));

    FieldSpec bump2;
    bump2.kind = FieldKind::gaussian_bump;
    bump2.width = L / 54.0;
    bump2.amplitude = 0.7;
    bump2.center = {0.5 * L + L / 16.0, 0.5 * L - L / 32.0, 0.5 * L};
    out.emplace_back("bump_offset", generate_scalar(grid, bump2));

    FieldSpec mode1;
    mode1.kind = FieldKind::single_mode;
    mode1.mode = {1, 1, 0};
    mode1.phase = 0.3;
    out.emplace_back("mode_low", generate_scalar(grid, mode1));

    FieldSpec mode2;
    mode2.kind = FieldKind::single_mode;
    mode2.mode = {4, 2, grid.dims() == 3 ? 1 : 0};
    mode2.amplitude = 0.5;
    mode2.phase = 1.1;
    out.emplace_back("mode_high", generate_scalar(grid, mode2));

    FieldSpec rand1;
    rand1.kind = FieldKind::random_smooth;
    rand1.seed = 101;
    rand1.spectral_decay = 3.0;
    out.emplace_back("random_a", generate_scalar(grid, rand1));

    FieldSpec rand2;
    rand2.kind = FieldKind::random_smooth;
    rand2.seed = 202;
    rand2.spectral_decay = 2.0;
    out.emplace_back("random_b", generate_scalar(grid, rand2));

    return out;
}

ScalarField scale_transform(const ScalarField& f, double lambda) {
    if (lambda != 2.0 && lambda != 0.5)
        throw std::invalid_argument("scale_transform: lambda must be 2 or 1/2");
    const Grid& g = f.grid();
    Grid out_grid(g.dims(), {g.res(0), g.res(1), g.res(2)}, g.box() / lambda);
    // Same node count: output node x_i sits at input node i exactly, so the
    // rematching is a pure relabeling of the lattice plus amplitude scaling.
    std::vector<double> v = f.values();
    for (auto& x : v) x *= lambda;
    return ScalarField::from_values(out_grid, std::move(v));
}

VectorField scale_transform(const VectorField& u, double lambda) {
    std::vector<ScalarField> comps;
    for (const auto& c : u.components()) comps.push_back(scale_transform(c, lambda));
    return VectorField(std::move(comps), u.divergence_free());
}

Trajectory scale_transform(const Trajectory& g, double lambda) {
    TimeMesh mesh = g.mesh().rescaled(1.0 / (lambda * lambda));
    if (g.is_vector()) {
        std::vector<VectorField> nodes;
        for (int k = 0; k < g.size(); ++k) nodes.push_back(scale_transform(g.vector_node(k), lambda));
        return Trajectory(mesh, std::move(nodes));
    }
    std::vector<ScalarField> nodes;
    for (int k = 0; k < g.size(); ++k) nodes.push_back(scale_transform(g.scalar_node(k), lambda));
    return Trajectory(mesh, std::move(nodes));
}

ScalarField translate_lattice(const ScalarField& f, const std::array<int, 3>& shift_nodes) {
    const Grid& g = f.grid();
    const auto& v = f.values();
    std::vector<double> out(v.size());
    std::array<int, 3> ij{0, 0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t rem = i;
        for (int a = g.dims() - 1; a >= 0; --a) {
            ij[a] = static_cast<int>(rem % g.res(a));
            rem /= g.res(a);
        }
        std::array<int, 3> src{ij[0] - shift_nodes[0], ij[1] - shift_nodes[1],
                               ij[2] - shift_nodes[2]};
        out[i] = v[g.flat_index(src)];
    }
    return ScalarField::from_values(g, std::move(out));
}

}  // namespace qns
