#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qns/field.hpp"
#include "qns/trajectory.hpp"

namespace qns {

enum class FieldKind {
    gaussian_bump,    // scalar: A exp(-d(x,c)^2 / (2 w^2)), torus metric d
    single_mode,      // scalar: A cos(2 pi k.x / L + phase)
    taylor_green,     // vector: classical cellular flow, exactly solenoidal
    random_smooth,    // scalar: seeded spectrum ~ (1+|k|)^-decay, band |k| <= N/4
    random_div_free,  // vector: random_smooth components, Leray projected
};

struct FieldSpec {
    FieldKind kind = FieldKind::gaussian_bump;
    std::array<double, 3> center{0.0, 0.0, 0.0};  // bump center; defaults to box center
    double width = 0.0;                           // bump std dev; defaults to L/36
    double amplitude = 1.0;
    std::array<int, 3> mode{1, 0, 0};
    double phase = 0.0;
    std::uint64_t seed = 1;
    double spectral_decay = 3.0;
};

FieldSpec parse_field_spec(const std::string& text);
std::string field_kind_name(FieldKind kind);

ScalarField generate_scalar(const Grid& grid, const FieldSpec& spec);
VectorField generate_vector(const Grid& grid, const FieldSpec& spec);

/// The six canonical scalar fields every measured constant refers to.
std::vector<std::pair<std::string, ScalarField>> scalar_corpus(const Grid& grid);

/// Exact sample rematching f -> lambda f(lambda x): same node count, box
/// length divided by lambda, values scaled.  lambda in {2, 1/2}.
ScalarField scale_transform(const ScalarField& f, double lambda);
VectorField scale_transform(const VectorField& u, double lambda);
/// g -> lambda g(lambda^2 t, lambda x): fields rematched, mesh times / lambda^2.
Trajectory scale_transform(const Trajectory& g, double lambda);

/// Lattice translation f(. - shift), shift given in node counts per axis.
ScalarField translate_lattice(const ScalarField& f, const std::array<int, 3>& shift_nodes);

}  // namespace qns
