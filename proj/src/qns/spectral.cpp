#include "qns/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace qns {

namespace {

double norm2(const std::array<double, 3>& xi) {
    return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

ScalarField real_multiplier(const ScalarField& f,
                            const std::function<double(double xi2)>& m_of_xi2) {
    const Grid& g = f.grid();
    const auto& spec = f.fourier();
    std::vector<std::complex<double>> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto xi = g.frequency(g.wavevector(i));
        out[i] = spec[i] * m_of_xi2(norm2(xi));
    }
    return ScalarField::from_fourier(g, std::move(out));
}

// Odd (i xi_j scaled) multiplier with the Nyquist row of axis j zeroed.
ScalarField odd_multiplier(const ScalarField& f, int axis,
                           const std::function<double(double xi_j, double xi_norm)>& m) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dims())
        throw std::invalid_argument("spectral: axis out of range");
    const auto& spec = f.fourier();
    std::vector<std::complex<double>> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto k = g.wavevector(i);
        if (k[axis] == g.res(axis) / 2) {
            out[i] = 0.0;
            continue;
        }
        auto xi = g.frequency(k);
        out[i] = spec[i] * std::complex<double>(0.0, m(xi[axis], std::sqrt(norm2(xi))));
    }
    return ScalarField::from_fourier(g, std::move(out));
}

}  // namespace

ScalarField heat_semigroup(const ScalarField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_semigroup: negative time");
    if (t == 0.0) return f;
    return real_multiplier(f, [t](double xi2) { return std::exp(-t * xi2); });
}

VectorField heat_semigroup(const VectorField& u, double t) {
    std::vector<ScalarField> out;
    for (const auto& c : u.components()) out.push_back(heat_semigroup(c, t));
    return VectorField(std::move(out), u.divergence_free());
}

ScalarField poisson_semigroup(const ScalarField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("poisson_semigroup: negative time");
    if (t == 0.0) return f;
    return real_multiplier(f, [t](double xi2) { return std::exp(-t * std::sqrt(xi2)); });
}

ScalarField fractional_laplacian(const ScalarField& f, double beta) {
    if (beta < 0.0 && std::abs(f.mean()) > 1e-13 * std::max(1.0, f.max_abs()))
        throw std::invalid_argument(
            "fractional_laplacian: negative power of a field with nonzero mean");
    return real_multiplier(f, [beta](double xi2) {
        if (xi2 == 0.0) return 0.0;
        return std::pow(std::sqrt(xi2), beta);
    });
}

ScalarField riesz_transform(const ScalarField& f, int axis) {
    return odd_multiplier(f, axis, [](double xi_j, double xi_norm) {
        return xi_norm > 0.0 ? xi_j / xi_norm : 0.0;
    });
}

ScalarField derivative(const ScalarField& f, int axis) {
    return odd_multiplier(f, axis, [](double xi_j, double) { return xi_j; });
}

VectorField gradient(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int a = 0; a < f.grid().dims(); ++a) out.push_back(derivative(f, a));
    return VectorField(std::move(out), false);
}

ScalarField divergence(const VectorField& u) {
    ScalarField d = derivative(u[0], 0);
    for (int a = 1; a < u.dims(); ++a) d = d + derivative(u[a], a);
    return d;
}

ScalarField laplacian(const ScalarField& f) {
    return real_multiplier(f, [](double xi2) { return -xi2; });
}

ScalarField inverse_laplacian(const ScalarField& f) {
    if (std::abs(f.mean()) > 1e-13 * std::max(1.0, f.max_abs()))
        throw std::invalid_argument("inverse_laplacian: field must have zero mean");
    return real_multiplier(f, [](double xi2) { return xi2 > 0.0 ? 1.0 / xi2 : 0.0; });
}

VectorField leray_project(const VectorField& u) {
    const Grid& g = u.grid();
    const int n = u.dims();
    std::vector<const std::vector<std::complex<double>>*> spec;
    for (const auto& c : u.components()) spec.push_back(&c.fourier());

    std::vector<std::vector<std::complex<double>>> out(
        n, std::vector<std::complex<double>>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.frequency(g.wavevector(i));
        double xi2 = norm2(xi);
        if (xi2 == 0.0) {
            for (int a = 0; a < n; ++a) out[a][i] = (*spec[a])[i];
            continue;
        }
        std::complex<double> dot{0.0, 0.0};
        for (int a = 0; a < n; ++a) dot += xi[a] * (*spec[a])[i];
        dot /= xi2;
        for (int a = 0; a < n; ++a) out[a][i] = (*spec[a])[i] - xi[a] * dot;
    }
    std::vector<ScalarField> comps;
    for (int a = 0; a < n; ++a)
        comps.push_back(ScalarField::from_fourier(g, std::move(out[a])));
    return VectorField(std::move(comps), true);
}

std::string tent_choice_label(TentChoice c) {
    switch (c) {
        case TentChoice::poisson_dt: return "1a";
        case TentChoice::poisson_grad: return "1b";
        case TentChoice::heat_dt: return "2a";
        case TentChoice::heat_grad: return "2b";
    }
    return "?";
}

TentChoice tent_choice_from_label(const std::string& label) {
    if (label == "1a") return TentChoice::poisson_dt;
    if (label == "1b") return TentChoice::poisson_grad;
    if (label == "2a") return TentChoice::heat_dt;
    if (label == "2b") return TentChoice::heat_grad;
    throw std::invalid_argument("unknown tent choice: " + label);
}

bool tent_choice_is_vector(TentChoice c) {
    return c == TentChoice::poisson_grad || c == TentChoice::heat_grad;
}

std::vector<ScalarField> tent_convolution(const ScalarField& f, TentChoice choice, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("tent_convolution: t must be positive");
    std::vector<ScalarField> out;
    switch (choice) {
        case TentChoice::poisson_dt:
            out.push_back(real_multiplier(f, [t](double xi2) {
                double xi = std::sqrt(xi2);
                return xi > 0.0 ? -t * xi * std::exp(-t * xi) : 0.0;
            }));
            break;
        case TentChoice::heat_dt:
            out.push_back(real_multiplier(f, [t](double xi2) {
                return xi2 > 0.0 ? -2.0 * t * t * xi2 * std::exp(-t * t * xi2) : 0.0;
            }));
            break;
        case TentChoice::poisson_grad:
            for (int a = 0; a < f.grid().dims(); ++a)
                out.push_back(odd_multiplier(f, a, [t](double xi_j, double xi_norm) {
                    return xi_norm > 0.0 ? t * xi_j * std::exp(-t * xi_norm) : 0.0;
                }));
            break;
        case TentChoice::heat_grad:
            for (int a = 0; a < f.grid().dims(); ++a)
                out.push_back(odd_multiplier(f, a, [t](double xi_j, double xi_norm) {
                    return xi_norm > 0.0 ? t * xi_j * std::exp(-t * t * xi_norm * xi_norm)
                                         : 0.0;
                }));
            break;
    }
    return out;
}

ScalarField multiply_dealiased(const ScalarField& a, const ScalarField& b) {
    const Grid& g = a.grid();
    if (g != b.grid()) throw std::invalid_argument("multiply_dealiased: grid mismatch");

    auto truncate = [&g](const ScalarField& f) {
        const auto& spec = f.fourier();
        std::vector<std::complex<double>> out(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i) {
            auto k = g.wavevector(i);
            bool keep = true;
            for (int ax = 0; ax < g.dims(); ++ax)
                if (3 * std::abs(k[ax]) > g.res(ax)) keep = false;
            out[i] = keep ? spec[i] : 0.0;
        }
        return ScalarField::from_fourier(g, std::move(out));
    };

    ScalarField at = truncate(a);
    ScalarField bt = truncate(b);
    const auto& av = at.values();
    const auto& bv = bt.values();
    std::vector<double> prod(av.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = av[i] * bv[i];
    return truncate(ScalarField::from_values(g, std::move(prod)));
}

}  // namespace qns
