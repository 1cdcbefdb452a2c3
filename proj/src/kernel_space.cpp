#include "nushift/kernel_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nushift/constants.hpp"
#include "nushift/grid_function.hpp"

namespace nushift {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

KernelElement::KernelElement(const ShiftMap& map, double t0, SeedKind kind,
                             std::vector<double> breaks,
                             std::vector<double> values)
    : kind_(kind), t0_(t0), breaks_(std::move(breaks)),
      values_(std::move(values)) {
    if (!(t0 > map.t_minus() && t0 < map.t_plus()))
        throw OutOfDomain("kernel base point must lie strictly inside the interval");
    t1_ = map.eval(t0);
    to_right_ = map.moves_right();
    if (breaks_.empty() || breaks_.size() != values_.size())
        throw OutOfDomain("kernel seed needs one value per cell");
    default_cap_ = 10 * compute_constants(map, 0.1).N_alpha + 10000;
}

KernelElement KernelElement::constant(const ShiftMap& map, double t0,
                                      double value) {
    const double u0 = map.moves_right() ? t0 : -t0;
    return KernelElement(map, t0, SeedKind::Constant, {u0}, {value});
}

KernelElement KernelElement::step(const ShiftMap& map, double t0, double lo,
                                  double hi, double split_fraction) {
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw OutOfDomain("step split fraction must lie in (0, 1)");
    const bool right = map.moves_right();
    const double u0 = right ? t0 : -t0;
    const double u1 = right ? map.eval(t0) : -map.eval(t0);
    const double split = u0 + split_fraction * (u1 - u0);
    return KernelElement(map, t0, SeedKind::Step, {u0, split}, {lo, hi});
}

KernelElement KernelElement::sampled(const ShiftMap& map, double t0,
                                     std::vector<double> ts,
                                     std::vector<double> values) {
    if (ts.empty() || ts.size() != values.size())
        throw OutOfDomain("sampled seed needs matching ts/values");
    const bool right = map.moves_right();
    const double u0 = right ? t0 : -t0;
    const double u1 = right ? map.eval(t0) : -map.eval(t0);
    std::vector<std::size_t> order(ts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto u_of = [&](std::size_t i) { return right ? ts[i] : -ts[i]; };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return u_of(a) < u_of(b); });
    std::vector<double> breaks, vals;
    for (std::size_t i : order) {
        const double u = u_of(i);
        if (!(u >= u0 && u < u1))
            throw OutOfDomain("sampled seed node outside [t0, Phi t0)");
        breaks.push_back(u);
        vals.push_back(values[i]);
    }
    if (breaks.front() != u0)
        throw OutOfDomain("sampled seed must start exactly at t0");
    return KernelElement(map, t0, SeedKind::Sampled, std::move(breaks),
                         std::move(vals));
}

KernelElement KernelElement::from_csv(const ShiftMap& map, double t0,
                                      const std::string& path) {
    const auto g = GridFunction::read_csv(path);
    return sampled(map, t0, {g.grid().begin(), g.grid().end()},
                   {g.values().begin(), g.values().end()});
}

double KernelElement::seed_min() const {
    return *std::min_element(values_.begin(), values_.end());
}

double KernelElement::seed_max() const {
    return *std::max_element(values_.begin(), values_.end());
}

double KernelElement::eval(const ShiftMap& map, double t,
                           std::int64_t max_steps) const {
    if (!(t > map.t_minus() && t < map.t_plus()))
        throw OutOfDomain("kernel evaluation needs t strictly inside the interval");
    const std::int64_t cap = max_steps < 0 ? default_cap_ : max_steps;
    const double u0 = breaks_.front();
    const double u1 = to_right_ ? t1_ : -t1_;
    auto u_of = [&](double x) { return to_right_ ? x : -x; };

    std::int64_t steps = 0;
    auto spent = [&]() {
        if (++steps > cap) {
            const double res = std::min(t - map.t_minus(), map.t_plus() - t);
            std::ostringstream msg;
            msg << "orbit walk exceeded " << cap << " steps; query is within "
                << res << " of a fixed point";
            throw OrbitExhausted(msg.str());
        }
    };
    // Pull sink-side points back first, then push source-side points
    // forward. The forward loop can overshoot the seam by one rounding
    // step; the cell lookup below sends that to the last cell.
    while (u_of(t) >= u1) {
        spent();
        t = map.invert(t, 1e-14);
    }
    while (u_of(t) < u0) {
        spent();
        t = map.eval(t);
    }
    const double u = u_of(t);
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
    const std::size_t idx =
        it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return values_[std::min(idx, values_.size() - 1)];
}

double kernel_eval(const ShiftMap& map, const KernelElement& elem, double t) {
    return elem.eval(map, t);
}

double verify_invariance(const ShiftMap& map, const KernelElement& elem,
                         std::span<const double> probes) {
    double worst = 0;
    for (double t : probes) {
        const double here = elem.eval(map, t);
        const double shifted = elem.eval(map, map.eval(t));
        worst = std::max(worst, std::abs(shifted - here));
    }
    return worst;
}

std::vector<OscillationRow> oscillation_profile(const ShiftMap& map,
                                                const KernelElement& elem,
                                                Endpoint endpoint,
                                                std::span<const double> radii,
                                                int samples_per_radius) {
    const double eps_phi = compute_constants(map, 0.1).eps_phi;
    double prev = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 0.0 && r < prev && r < eps_phi))
            throw OutOfDomain("radii must be positive, decreasing, below eps_phi");
        prev = r;
    }
    const double e =
        endpoint == Endpoint::Minus ? map.t_minus() : map.t_plus();
    const double inward = endpoint == Endpoint::Minus ? 1.0 : -1.0;

    std::vector<OscillationRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int i = 1; i <= samples_per_radius; ++i) {
            const double t = e + inward * r * i / (samples_per_radius + 1);
            const double v = elem.eval(map, t);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rows.push_back({r, hi - lo});
    }
    return rows;
}

void write_oscillation_csv(std::ostream& out,
                           std::span<const OscillationRow> rows) {
    out << "radius,oscillation\n";
    for (const auto& r : rows)
        out << fmt(r.radius) << ',' << fmt(r.oscillation) << '\n';
}

} // namespace nushift
