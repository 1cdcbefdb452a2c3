#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nushift/shift_map.hpp"

namespace nushift {

/// The explicit constants certifying geometric orbit convergence and
/// bounding the Lipschitz norm of the inverse.
struct ConstantsReport {
    double delta = 0;          // user margin, in (0, 1/2)
    double alpha = 0;
    double lip_norm = 0;       // ‖φ‖_Lip
    double alpha_max = 0;      // α_φ = 1/‖φ‖_Lip
    double phi_prime_inf = 0;  // min endpoint slope magnitude
    double E_phi = 0;          // Lipschitz bound for the envelopes E_±
    double eps_phi = 0;        // endpoint-neighborhood radius
    double m_phi = 0;          // interior lower bound on |φ|
    std::int64_t N_alpha = 0;  // traversal count
    double V_phi = 0;          // geometric-sum constant
    double K_1 = 0;            // endpoint-splitting constant
    double K_phi = 0;          // max(K_1, V_phi)
    bool K_phi_from_V = false; // which branch attains the max
    double t_minus = 0, t_plus = 0;
    // The theorem's stated hypothesis chain |α| < (1−δ)/φ'_∞ < 1/‖φ‖_Lip is
    // recorded but not enforced; only |α| < α_φ is required.
    bool stated_alpha_chain_holds = false;

    std::string to_key_value() const;
};

/// Envelopes E_±(t) = φ(t)/(φ'(t_{±∞})(t−t_{±∞})) − 1 with the removable
/// singularity filled by 0. Returned as (E_minus, E_plus).
std::pair<double, double> envelope_functions(const PerturbationField& field,
                                             double t);

/// Full ladder: measured E_φ (Chebyshev probe sweep × 1.25 safety), then
/// ε_φ, m_φ, N_α, V_φ, K_1, K_φ by the closed formulas.
ConstantsReport compute_constants(const ShiftMap& map, double delta);

/// Verifies |φ| ≥ trapezoid on the given grid; returns the minimum slack.
/// Throws TrapezoidViolation (with the offending t) when negative, which
/// signals an underestimated E_φ.
double trapezoid_check(const ShiftMap& map, const ConstantsReport& report,
                       std::span<const double> grid);

struct ScalingRow {
    double alpha = 0;
    std::int64_t N_alpha = 0;
    double V_phi = 0, K_1 = 0, K_phi = 0, alpha_K_phi = 0;
};

/// One ConstantsReport per amplitude, tabulated for the O(1/α) study.
std::vector<ScalingRow> scaling_study(const PerturbationField& field,
                                      double delta,
                                      std::span<const double> alphas);

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

} // namespace nushift
