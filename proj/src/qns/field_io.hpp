#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "qns/field.hpp"
#include "qns/trajectory.hpp"

namespace qns {

/// QNSF1 text format: header line `QNSF1 ndims res... L`, then row-major
/// node values; vector fields separate components with `component j` lines.
void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const VectorField& u);
void write_field_file(const std::string& path, const ScalarField& f);
void write_field_file(const std::string& path, const VectorField& u);

using AnyField = std::variant<ScalarField, VectorField>;
AnyField read_field(std::istream& is);
AnyField read_field_file(const std::string& path);

/// QNST1 trajectory format: `QNST1 n_nodes`, then per node a `t <value>`
/// line followed by an embedded QNSF1 block.  The geometric mesh is
/// reconstructed from the stored sample times on read.
void write_trajectory(std::ostream& os, const Trajectory& g);
void write_trajectory_file(const std::string& path, const Trajectory& g);
Trajectory read_trajectory(std::istream& is);
Trajectory read_trajectory_file(const std::string& path);

}  // namespace qns
