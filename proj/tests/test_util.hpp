#pragma once

#include <cmath>

#include "qns/field.hpp"
#include "qns/field_gen.hpp"

namespace qns::test {

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    const auto& va = a.values();
    const auto& vb = b.values();
    double m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
    return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < a.dims(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
    return m;
}

inline double rel_l2_error(const ScalarField& a, const ScalarField& b) {
    const auto& va = a.values();
    const auto& vb = b.values();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        num += (va[i] - vb[i]) * (va[i] - vb[i]);
        den += vb[i] * vb[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline ScalarField constant_field(const Grid& g, double c) {
    return ScalarField::from_values(g, std::vector<double>(g.size(), c));
}

inline ScalarField random_field(const Grid& g, std::uint64_t seed, double decay = 3.0) {
    FieldSpec spec;
    spec.kind = FieldKind::random_smooth;
    spec.seed = seed;
    spec.spectral_decay = decay;
    return generate_scalar(g, spec);
}

inline ScalarField bump_field(const Grid& g, double width_frac = 36.0, double amp = 1.0) {
    FieldSpec spec;
    spec.kind = FieldKind::gaussian_bump;
    spec.width = g.box() / width_frac;
    spec.amplitude = amp;
    return generate_scalar(g, spec);
}

inline VectorField random_div_free_field(const Grid& g, std::uint64_t seed) {
    FieldSpec spec;
    spec.kind = FieldKind::random_div_free;
    spec.seed = seed;
    return generate_vector(g, spec);
}

}  // namespace qns::test
