#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nushift/constants.hpp"
#include "nushift/grid_function.hpp"
#include "nushift/shift_map.hpp"

namespace nushift {

/// Derivative jet of the orbit map: position t_k = Φ^k t0 together with
/// the first p derivatives of t ↦ Φ^k t at the base point,
/// jet = (s_k, r_k, q_k, …).
struct JetState {
    int order = 1;            // p
    double t = 0;             // t_k
    std::vector<double> jet;  // jet[j] = (j+1)-th derivative, length p

    static JetState identity(int p, double t0);
    /// ℓ¹ norm of the derivative part Û_k = (s_k, r_k, q_k, …).
    double jet_abs_sum() const;
    /// ℓ¹ distance to the rest point (t_fixed, 0, …, 0).
    double dist_to_fixed(double t_fixed) const;
};

/// One step of the jet hierarchy, realized as truncated Taylor-jet
/// composition of Φ with the current jet (systematic for any order p).
/// Requires field derivatives through p+1.
JetState jet_step(const ShiftMap& map, const JetState& state);

/// The hand-expanded recurrences for p ≤ 3 — a cross-check of the series
/// path:
///   t' = t + αφ,  s' = (1+αφ')s,  r' = (1+αφ')r + αφ''s²,
///   q' = (1+αφ')q + 3αφ''sr + αφ'''s³.
JetState jet_step_explicit(const ShiftMap& map, const JetState& state);

/// Forward trajectory U_0 … U_{k_max}, U_0 the identity jet at t0.
std::vector<JetState> propagate(const ShiftMap& map, double t0, int p,
                                int k_max);

/// Jets of the inverse iterates Φ^{−l} for l = 0 … l_max; the inverse-map
/// jet at each point comes from the forward jet by series reversion.
std::vector<JetState> propagate_backward(const ShiftMap& map, double t0, int p,
                                         int l_max);

struct ContractionEstimate {
    double eta = 0;      // per-step contraction margin near the sink
    double eps_jet = 0;  // verified neighborhood radius (ℓ¹)
};

/// Samples the step map on shrinking neighborhood ladders of both rest
/// points: contraction at U_{+∞} (and of the derivative part alone),
/// backward expansion at U_{−∞}. The radius also shrinks until φ' drifts
/// by at most delta·|φ'| across the neighborhood. Throws
/// ContractionNotFound if no positive margin exists at the minimum radius.
ContractionEstimate contraction_check(const ShiftMap& map, int p, double delta);

struct CpReport {
    int p = 0;
    double eta = 0;
    double eps_jet = 0;
    std::int64_t N_K = 0;       // worst first-entry step into the neighborhood
    double sum_bound = 0;       // certified bound on Σ_k |Û_k|
    double k0_composition = 0;  // measured composition constant of the C^p norm
    double sup_part = 0;        // K_φ · (t_plus − t_minus), the order-0 share
    double K_cp = 0;            // ‖Δ_Φ⁻¹ w‖_p ≤ (K_cp/|α|)·‖w‖_p

    std::string to_key_value() const;
};

/// Certifies Σ_k |Û_k| over a 33-point probe set of base points at least
/// ε_φ from the endpoints: partial sum to first entry plus the geometric
/// tail |Û_{N_K}|/η, then folds in the measured composition constant and
/// the Lipschitz sup bound.
CpReport cp_bound(const ShiftMap& map, int p, const ConstantsReport& report);

/// Estimator of ‖f‖_p = sup_t Σ_{j≤p} |f^(j)(t)| by finite differences on
/// the grid (Fornberg weights on the 2p+1 nearest nodes, interior points
/// only). Throws GridTooCoarse below 2p+1 points.
double cp_norm(const GridFunction& f, int p);

void write_jet_csv(std::ostream& out, const std::vector<JetState>& states,
                   int k_first = 0, int k_stride = 1);

} // namespace nushift
