#pragma once

#include <span>
#include <string>
#include <vector>

#include "nushift/constants.hpp"
#include "nushift/grid_function.hpp"
#include "nushift/shift_map.hpp"

namespace nushift {

/// Outcome of the range-membership test: the bilateral orbit sums at the
/// probe points must agree on a single constant (= v(t_{+∞}) − v(t_{−∞})).
struct SolvabilityVerdict {
    double endpoint_value_minus = 0;  // |w(t_minus)|
    double endpoint_value_plus = 0;   // |w(t_plus)|
    std::vector<double> probes;
    std::vector<double> bilateral_values;
    double spread = 0;
    double constant = 0;
    double tol = 0;
    bool endpoint_decay_ok = false;
    bool passed = false;
    std::string failure_reason;

    std::string to_key_value() const;
};

/// The constructed inverse v with its certificates.
struct InverseSolution {
    GridFunction v;
    std::string anchor;       // which endpoint value was pinned to zero
    double constant = 0;      // v(t_sink) − v(t_source), from the verdict
    double residual_sup = 0;  // sup over grid of |v(Φt) − v(t) − w(t)|
    double lip_ratio = 0;     // ‖v‖_Lip / ‖w‖_Lip

    std::string to_key_value() const;
};

/// Σ_{j≥0} w(Φ^j t), truncated once the geometric tail certificate
/// ‖w‖_Lip·|t_sink − Φ^J t| / (|α|(1−δ)φ'_∞) drops below tol (valid inside
/// the ε_φ neighborhood of the sink). Throws NoDecay when w(t_sink)
/// exceeds tol (the series provably diverges) and TailStall past the
/// iteration cap 10·N_α + 10⁴.
double forward_sum(const ShiftMap& map, const GridFunction& w, double t,
                   double tol);
double forward_sum(const ShiftMap& map, const GridFunction& w, double t,
                   double tol, const ConstantsReport& report);

/// Σ_{l≥1} w(Φ^{−l} t) with the symmetric certificate at the source.
double backward_sum(const ShiftMap& map, const GridFunction& w, double t,
                    double tol);
double backward_sum(const ShiftMap& map, const GridFunction& w, double t,
                    double tol, const ConstantsReport& report);

/// Bilateral sum at each probe t, split as backward(t) + w(t) + forward(Φt)
/// so every orbit point is counted exactly once. Passes iff both endpoint
/// values are ≤ tol and the spread is ≤ tol·(1 + |constant|).
SolvabilityVerdict check_solvability(const ShiftMap& map, const GridFunction& w,
                                     std::span<const double> probes, double tol);
SolvabilityVerdict check_solvability(const ShiftMap& map, const GridFunction& w,
                                     std::span<const double> probes, double tol,
                                     const ConstantsReport& report);

/// Constructs v on w's grid from the series formulas, anchored so that
/// v(t_source) = 0 and v(t_sink) = constant; the cheaper of the forward and
/// backward expressions is used on each half. Throws SolvabilityRequired
/// when the pre-flight verdict fails, ToleranceUnreachable when the
/// measured residual exceeds tol.
InverseSolution solve(const ShiftMap& map, const GridFunction& w,
                      const ConstantsReport& report, double tol = 1e-10);

} // namespace nushift
