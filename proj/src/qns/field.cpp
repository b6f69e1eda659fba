#include "qns/field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "qns/fft.hpp"

namespace qns {

struct ScalarField::Impl {
    Grid grid;
    mutable std::vector<double> values;
    mutable std::vector<std::complex<double>> fourier;
    mutable bool values_ok = false;
    mutable bool fourier_ok = false;
    mutable std::mutex sync;

    explicit Impl(const Grid& g) : grid(g) {}

    void ensure_values() const {
        std::lock_guard<std::mutex> lock(sync);
        if (!values_ok) {
            values = fft_backward(grid, fourier);
            values_ok = true;
        }
    }
    void ensure_fourier() const {
        std::lock_guard<std::mutex> lock(sync);
        if (!fourier_ok) {
            fourier = fft_forward(grid, values);
            fourier_ok = true;
        }
    }
};

ScalarField::ScalarField(const Grid& grid) : impl_(std::make_shared<Impl>(grid)) {
    impl_->values.assign(grid.size(), 0.0);
    impl_->fourier.assign(grid.size(), {0.0, 0.0});
    impl_->values_ok = impl_->fourier_ok = true;
}

ScalarField ScalarField::from_values(const Grid& grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("ScalarField: values size mismatch");
    auto impl = std::make_shared<Impl>(grid);
    impl->values = std::move(values);
    impl->values_ok = true;
    return ScalarField(std::move(impl));
}

ScalarField ScalarField::from_fourier(const Grid& grid,
                                      std::vector<std::complex<double>> fourier) {
    if (fourier.size() != grid.size())
        throw std::invalid_argument("ScalarField: fourier size mismatch");
    auto impl = std::make_shared<Impl>(grid);
    impl->fourier = std::move(fourier);
    impl->fourier_ok = true;
    return ScalarField(std::move(impl));
}

const Grid& ScalarField::grid() const { return impl_->grid; }

const std::vector<double>& ScalarField::values() const {
    impl_->ensure_values();
    return impl_->values;
}

const std::vector<std::complex<double>>& ScalarField::fourier() const {
    impl_->ensure_fourier();
    return impl_->fourier;
}

double ScalarField::mean() const { return fourier()[0].real(); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values()) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::l2_norm() const {
    double s = 0.0;
    for (double v : values()) s += v * v;
    return std::sqrt(s * grid().cell_volume());
}

double ScalarField::l1_norm() const {
    double s = 0.0;
    for (double v : values()) s += std::abs(v);
    return s * grid().cell_volume();
}

double ScalarField::representation_error() const {
    std::lock_guard<std::mutex> lock(impl_->sync);
    if (!impl_->values_ok || !impl_->fourier_ok) return 0.0;
    auto round_trip = fft_backward(impl_->grid, impl_->fourier);
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < round_trip.size(); ++i) {
        scale = std::max(scale, std::abs(impl_->values[i]));
        err = std::max(err, std::abs(impl_->values[i] - round_trip[i]));
    }
    return scale > 0.0 ? err / scale : err;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (a != b) throw std::invalid_argument("field arithmetic: grid mismatch");
}

}  // namespace

ScalarField ScalarField::operator+(const ScalarField& other) const {
    require_same_grid(grid(), other.grid());
    const auto& a = values();
    const auto& b = other.values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return from_values(grid(), std::move(out));
}

ScalarField ScalarField::operator-(const ScalarField& other) const {
    require_same_grid(grid(), other.grid());
    const auto& a = values();
    const auto& b = other.values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return from_values(grid(), std::move(out));
}

ScalarField ScalarField::operator*(double scalar) const {
    const auto& a = values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scalar * a[i];
    return from_values(grid(), std::move(out));
}

ScalarField apply_multiplier(
    const ScalarField& f,
    const std::function<std::complex<double>(const std::array<int, 3>&)>& symbol) {
    const Grid& g = f.grid();
    const auto& spec = f.fourier();
    std::vector<std::complex<double>> out(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        out[i] = spec[i] * symbol(g.wavevector(i));
    return ScalarField::from_fourier(g, std::move(out));
}

VectorField::VectorField(const Grid& grid) : divergence_free_(true) {
    for (int a = 0; a < grid.dims(); ++a) components_.emplace_back(grid);
}

VectorField::VectorField(std::vector<ScalarField> components, bool divergence_free)
    : components_(std::move(components)), divergence_free_(divergence_free) {
    if (components_.empty())
        throw std::invalid_argument("VectorField: no components");
    const Grid& g = components_[0].grid();
    if (static_cast<int>(components_.size()) != g.dims())
        throw std::invalid_argument("VectorField: component count must equal grid dims");
    for (const auto& c : components_) require_same_grid(g, c.grid());
}

VectorField VectorField::tagged_divergence_free(bool flag) const {
    VectorField out(components_, flag);
    return out;
}

double VectorField::max_abs() const {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

double VectorField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : components_) {
        double n = c.l2_norm();
        s += n * n;
    }
    return std::sqrt(s);
}

double VectorField::divergence_defect() const {
    const Grid& g = grid();
    double max_coeff = 0.0, max_dot = 0.0;
    std::vector<const std::vector<std::complex<double>>*> spec;
    for (const auto& c : components_) spec.push_back(&c.fourier());
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto xi = g.frequency(g.wavevector(i));
        std::complex<double> dot{0.0, 0.0};
        for (int a = 0; a < dims(); ++a) {
            const auto& ca = (*spec[a])[i];
            max_coeff = std::max(max_coeff, std::abs(ca));
            dot += xi[a] * ca;
        }
        max_dot = std::max(max_dot, std::abs(dot));
    }
    // Normalize by frequency scale so the defect is dimensionless.
    double xi_max = 0.0;
    for (int a = 0; a < dims(); ++a)
        xi_max = std::max(xi_max, g.frequency({g.res(0) / 2, g.res(1) / 2, g.res(2) / 2})[a]);
    if (max_coeff == 0.0) return 0.0;
    return max_dot / (xi_max * max_coeff);
}

VectorField VectorField::operator+(const VectorField& other) const {
    std::vector<ScalarField> out;
    for (int a = 0; a < dims(); ++a) out.push_back(components_[a] + other.components_[a]);
    return VectorField(std::move(out), divergence_free_ && other.divergence_free_);
}

VectorField VectorField::operator-(const VectorField& other) const {
    std::vector<ScalarField> out;
    for (int a = 0; a < dims(); ++a) out.push_back(components_[a] - other.components_[a]);
    return VectorField(std::move(out), divergence_free_ && other.divergence_free_);
}

VectorField VectorField::operator*(double scalar) const {
    std::vector<ScalarField> out;
    for (const auto& c : components_) out.push_back(c * scalar);
    return VectorField(std::move(out), divergence_free_);
}

}  // namespace qns
