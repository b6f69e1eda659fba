#pragma once

#include <optional>
#include <vector>

#include "qns/field.hpp"
#include "qns/time_mesh.hpp"

namespace qns {

/// Time-sampled field g(t, .) on (0, T): one field per TimeMesh sample point,
/// stored in the mesh's decreasing-time order.  Between samples the
/// trajectory is evaluated by linear interpolation in log t (exact for
/// time-constant data); outside the sampled range it clamps to the nearest
/// sample.
class Trajectory {
public:
    Trajectory(TimeMesh mesh, std::vector<ScalarField> nodes);
    Trajectory(TimeMesh mesh, std::vector<VectorField> nodes);

    bool is_vector() const { return !vec_nodes_.empty(); }
    const TimeMesh& mesh() const { return mesh_; }
    int size() const;
    double horizon() const { return mesh_.t_cap(); }
    double time(int k) const { return mesh_.sample(k); }

    const ScalarField& scalar_node(int k) const;
    const VectorField& vector_node(int k) const;

    /// Interpolated evaluation.  `clamp_cap`, when finite, restricts the
    /// evaluation to samples at times <= clamp_cap so that quadratures over
    /// (0, t) never read values from the future of t.
    ScalarField scalar_at(double t, double clamp_cap = -1.0) const;
    VectorField vector_at(double t, double clamp_cap = -1.0) const;

    const Grid& grid() const;

private:
    TimeMesh mesh_;
    std::vector<ScalarField> scal_nodes_;
    std::vector<VectorField> vec_nodes_;

    // bracketing index pair and interpolation weight for time t
    struct Bracket {
        int k_hi, k_lo;
        double theta;  // weight of k_hi
    };
    Bracket bracket(double t, double clamp_cap) const;
};

}  // namespace qns
