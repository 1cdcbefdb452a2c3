#pragma once

#include <vector>

#include "nushift/perturbation.hpp"

namespace nushift {

/// A forward/backward orbit segment Φ^k t0 for k in [k_min, k_max].
struct Orbit {
    double base = 0;
    int k_min = 0;
    std::vector<double> points;  // points[k - k_min] = Φ^k base

    int k_max() const { return k_min + static_cast<int>(points.size()) - 1; }
    double at(int k) const { return points.at(static_cast<std::size_t>(k - k_min)); }
};

/// The shift Φ(t) = t + αφ(t) on the field's interval, 0 < |α| < α_φ.
///
/// Orbits converge to one endpoint (the sink, t_{+∞}) under forward
/// iteration and to the other (the source, t_{−∞}) under backward
/// iteration; which is which depends on the sign of αφ and is fixed once at
/// construction. All downstream estimates are phrased against source/sink
/// and |α|, so both orientations share one code path.
class ShiftMap {
public:
    ShiftMap(PerturbationField field, double alpha);

    /// Φ(t). Throws OutOfDomain if t lies outside the closed interval by
    /// more than a relative 1e-9 slack.
    double eval(double t) const;

    /// Φ⁻¹(y) by safeguarded Newton (initial guess y − αφ(y), bisection
    /// fallback), with a final ulp snap that prefers exact-residual
    /// preimages. Throws NoConvergence after max_iter iterations.
    double invert(double y, double tol = 1e-12, int max_iter = 100) const;

    /// Φ^k t0 for k in [k_min, k_max]; negative k uses invert().
    Orbit orbit(double t0, int k_min, int k_max) const;

    /// Φ^k t, any sign of k.
    double iterate(double t, int k) const;

    const PerturbationField& field() const { return field_; }
    double alpha() const { return alpha_; }
    double alpha_max() const { return 1.0 / field_.lip_norm(); }
    double t_minus() const { return field_.t_minus(); }
    double t_plus() const { return field_.t_plus(); }
    double length() const { return field_.length(); }

    /// True when αφ > 0 on the interior (orbits move right).
    bool moves_right() const { return moves_right_; }
    double t_source() const { return moves_right_ ? t_minus() : t_plus(); }
    double t_sink() const { return moves_right_ ? t_plus() : t_minus(); }

private:
    PerturbationField field_;
    double alpha_;
    bool moves_right_;
    double domain_slack_;
};

// Spec-surface spellings.
inline double eval_shift(const ShiftMap& map, double t) { return map.eval(t); }
inline double invert_shift(const ShiftMap& map, double y, double tol = 1e-12) {
    return map.invert(y, tol);
}
inline Orbit orbit(const ShiftMap& map, double t0, int k_min, int k_max) {
    return map.orbit(t0, k_min, k_max);
}

} // namespace nushift
