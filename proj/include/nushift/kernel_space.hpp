#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nushift/shift_map.hpp"

namespace nushift {

enum class SeedKind { Constant, Step, Sampled };

/// An L∞ kernel element of Δ_Φ: seed data ṽ₀ on the fundamental domain
/// [t0, Φt0) (half-open toward the sink), extended to the whole open
/// interval by v(Φ^k t) = v(t).
///
/// Seeds are piecewise constant on the domain, which keeps the extension
/// *exactly* Φ-invariant under the orbit-walk evaluation: the walk only
/// compares the query point against deterministically iterated break
/// points, so v(Φt) and v(t) resolve to the same seed cell bitwise.
/// Piecewise-constant seeds are dense in L∞[t0, Φt0).
class KernelElement {
public:
    static KernelElement constant(const ShiftMap& map, double t0, double value);
    /// Two-valued seed: `lo` on the first `split_fraction` of the domain
    /// (measured from t0 toward Φt0), `hi` on the rest.
    static KernelElement step(const ShiftMap& map, double t0, double lo,
                              double hi, double split_fraction = 0.5);
    /// Piecewise-constant from samples: value[i] on the half-open cell
    /// starting at ts[i]; ts[0] must equal t0 and all ts lie in [t0, Φt0).
    static KernelElement sampled(const ShiftMap& map, double t0,
                                 std::vector<double> ts,
                                 std::vector<double> values);
    static KernelElement from_csv(const ShiftMap& map, double t0,
                                  const std::string& path);

    SeedKind kind() const { return kind_; }
    double t0() const { return t0_; }
    double domain_end() const { return t1_; }  // Φt0
    double seed_min() const;
    double seed_max() const;

    /// Evaluates the extension at t in the open interval by walking the
    /// orbit into the fundamental domain (the defining relation, applied
    /// k times). Throws OrbitExhausted past max_steps (default
    /// 10·N_α + 10⁴), which only happens within rounding distance of the
    /// endpoints. Throws OutOfDomain outside the open interval.
    double eval(const ShiftMap& map, double t, std::int64_t max_steps = -1) const;

private:
    KernelElement(const ShiftMap& map, double t0, SeedKind kind,
                  std::vector<double> breaks, std::vector<double> values);

    SeedKind kind_;
    double t0_ = 0, t1_ = 0;
    bool to_right_ = true;            // domain extends from t0 toward the sink
    std::vector<double> breaks_;      // cell lefts (in walk direction), breaks_[0] == t0
    std::vector<double> values_;      // one value per cell
    std::int64_t default_cap_ = 0;
};

/// Spec-surface spelling of KernelElement::eval.
double kernel_eval(const ShiftMap& map, const KernelElement& elem, double t);

/// max |v(Φt) − v(t)| over the probes. The construction satisfies the
/// functional equation identically, so this returns exactly 0.
double verify_invariance(const ShiftMap& map, const KernelElement& elem,
                         std::span<const double> probes);

enum class Endpoint { Minus, Plus };

struct OscillationRow {
    double radius = 0;
    double oscillation = 0;  // sup − inf of v over the punctured neighborhood
};

/// Oscillation of the kernel element on shrinking punctured neighborhoods
/// of one endpoint: ~0 for constant seeds, bounded below by the seed
/// oscillation otherwise (the discontinuity at the fixed points).
std::vector<OscillationRow> oscillation_profile(const ShiftMap& map,
                                                const KernelElement& elem,
                                                Endpoint endpoint,
                                                std::span<const double> radii,
                                                int samples_per_radius = 1000);

void write_oscillation_csv(std::ostream& out,
                           std::span<const OscillationRow> rows);

} // namespace nushift
