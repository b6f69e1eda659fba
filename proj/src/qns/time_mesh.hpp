#pragma once

namespace qns {

/// Geometric partition of (0, T_cap] used for all singular time quadratures.
///
/// Edges e_k = T_cap * ratio^k for k = 0..levels; cell k spans
/// [e_{k+1}, e_k] and is sampled at its log-midpoint s_k = sqrt(e_k e_{k+1}).
/// Cell masses against t^{-exponent} dt are exact, so the t -> 0 singularity
/// costs nothing in quadrature order.  The residual tail (0, e_levels) is
/// dropped; its mass vanishes as levels grow since exponent < 1.
class TimeMesh {
public:
    TimeMesh(double t_cap, double ratio, int levels);

    double t_cap() const { return t_cap_; }
    double ratio() const { return ratio_; }
    int levels() const { return levels_; }

    double edge(int k) const;    // k in [0, levels]
    double sample(int k) const;  // k in [0, levels)

    /// Exact cell mass: integral of t^{-exponent} dt over [e_{k+1}, e_k].
    /// exponent < 1; exponent == 1 gives the log weight.
    double weight(int k, double exponent) const;

    /// Same span and depth, log spacing halved (edges are a superset).
    TimeMesh refined() const;
    /// Same spacing, extra cells appended at the bottom.
    TimeMesh extended(int extra_levels) const;
    /// All times multiplied by `factor` (the t -> t/lambda^2 rematching).
    TimeMesh rescaled(double factor) const;

private:
    double t_cap_;
    double ratio_;
    int levels_;
};

}  // namespace qns
