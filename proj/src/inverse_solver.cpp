#include "nushift/inverse_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nushift {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct KahanSum {
    double sum = 0, carry = 0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// One-sided orbit sum with the certified geometric tail cutoff. Forward
// sums include the base point (j = 0); backward sums start at Φ⁻¹t (l = 1).
double orbit_sum(const ShiftMap& map, const GridFunction& w, double t,
                 bool forward, double tail_tol, double decay_tol,
                 const ConstantsReport& rpt) {
    const double fixed_pt = forward ? map.t_sink() : map.t_source();
    if (std::abs(w(fixed_pt)) > decay_tol) {
        std::ostringstream msg;
        msg << "w(" << (forward ? "t_sink" : "t_source") << ")="
            << w(fixed_pt) << " exceeds " << decay_tol
            << "; the orbit series diverges";
        throw NoDecay(msg.str());
    }
    const double denom =
        std::abs(map.alpha()) * (1.0 - rpt.delta) * rpt.phi_prime_inf;
    const double lip = w.lipschitz_norm();
    const std::int64_t cap = 10 * rpt.N_alpha + 10000;

    KahanSum sum;
    double x = t;
    for (std::int64_t step = 0; step <= cap; ++step) {
        if (!forward) {
            const double prev = x;
            x = map.invert(x, 1e-14);
            if (x == prev) {
                // Stagnant orbit: the query sits on a fixed point, so all
                // remaining terms equal w(x).
                if (std::abs(w(x)) <= decay_tol) return sum.sum;
                throw NoDecay("orbit is pinned at a fixed point where w does "
                              "not vanish");
            }
        }
        const double dist = std::abs(fixed_pt - x);
        if (dist <= rpt.eps_phi && lip * dist / denom <= tail_tol)
            return sum.sum;
        sum.add(w(x));
        if (forward) {
            const double next = map.eval(x);
            if (next == x) {
                if (std::abs(w(x)) <= decay_tol) return sum.sum;
                throw NoDecay("orbit is pinned at a fixed point where w does "
                              "not vanish");
            }
            x = next;
        }
    }
    std::ostringstream msg;
    msg << (forward ? "forward" : "backward") << " sum at t=" << t
        << " did not certify its tail within " << cap
        << " steps (remaining distance " << std::abs(fixed_pt - x) << ")";
    throw TailStall(msg.str());
}

std::vector<double> default_probes(const ShiftMap& map, int n) {
    std::vector<double> ps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ps[static_cast<std::size_t>(i)] =
            map.t_minus() + map.length() * (i + 1) / (n + 1);
    return ps;
}

} // namespace

double forward_sum(const ShiftMap& map, const GridFunction& w, double t,
                   double tol, const ConstantsReport& report) {
    return orbit_sum(map, w, t, true, tol, tol, report);
}

double forward_sum(const ShiftMap& map, const GridFunction& w, double t,
                   double tol) {
    return forward_sum(map, w, t, tol, compute_constants(map, 0.1));
}

double backward_sum(const ShiftMap& map, const GridFunction& w, double t,
                    double tol, const ConstantsReport& report) {
    return orbit_sum(map, w, t, false, tol, tol, report);
}

double backward_sum(const ShiftMap& map, const GridFunction& w, double t,
                    double tol) {
    return backward_sum(map, w, t, tol, compute_constants(map, 0.1));
}

SolvabilityVerdict check_solvability(const ShiftMap& map, const GridFunction& w,
                                     std::span<const double> probes, double tol,
                                     const ConstantsReport& report) {
    SolvabilityVerdict verdict;
    verdict.tol = tol;
    verdict.endpoint_value_minus = std::abs(w(map.t_minus()));
    verdict.endpoint_value_plus = std::abs(w(map.t_plus()));
    verdict.endpoint_decay_ok =
        verdict.endpoint_value_minus <= tol && verdict.endpoint_value_plus <= tol;
    if (!verdict.endpoint_decay_ok) {
        verdict.passed = false;
        verdict.failure_reason = "w does not vanish at the fixed points";
        return verdict;
    }

    const double inner_tol = tol / 8.0;
    verdict.probes.assign(probes.begin(), probes.end());
    verdict.bilateral_values.reserve(probes.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    KahanSum mean;
    try {
        for (double t : probes) {
            if (!(t > map.t_minus() && t < map.t_plus()))
                throw OutOfDomain("probe must lie strictly inside the interval");
            const double val = backward_sum(map, w, t, inner_tol, report) + w(t) +
                               forward_sum(map, w, map.eval(t), inner_tol, report);
            verdict.bilateral_values.push_back(val);
            lo = std::min(lo, val);
            hi = std::max(hi, val);
            mean.add(val);
        }
    } catch (const NoDecay& e) {
        verdict.passed = false;
        verdict.failure_reason = e.what();
        return verdict;
    }
    verdict.spread = hi - lo;
    verdict.constant = mean.sum / static_cast<double>(probes.size());
    verdict.passed = verdict.spread <= tol * (1.0 + std::abs(verdict.constant));
    if (!verdict.passed)
        verdict.failure_reason = "bilateral sums are not constant in t";
    return verdict;
}

SolvabilityVerdict check_solvability(const ShiftMap& map, const GridFunction& w,
                                     std::span<const double> probes, double tol) {
    return check_solvability(map, w, probes, tol, compute_constants(map, 0.1));
}

InverseSolution solve(const ShiftMap& map, const GridFunction& w,
                      const ConstantsReport& report, double tol) {
    const auto preflight = default_probes(map, 8);
    const auto verdict = check_solvability(map, w, preflight, tol, report);
    if (!verdict.passed)
        throw SolvabilityRequired("solve requires a passing solvability verdict: " +
                                  verdict.failure_reason);
    const double constant = verdict.constant;

    const double inner_tol = tol / 8.0;
    const double source = map.t_source();
    const double sink = map.t_sink();

    // v by the cheaper series: backward on the source half, forward on the
    // sink half; anchored v(t_source) = 0, v(t_sink) = constant.
    auto v_at = [&](double t) -> double {
        if (t == source) return 0.0;
        if (t == sink) return constant;
        const bool sink_side = std::abs(t - sink) <= std::abs(t - source);
        if (sink_side)
            return constant - forward_sum(map, w, t, inner_tol, report);
        return backward_sum(map, w, t, inner_tol, report);
    };

    std::vector<double> grid(w.grid().begin(), w.grid().end());
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = v_at(grid[i]);

    InverseSolution sol;
    sol.v = GridFunction(grid, values);
    sol.constant = constant;
    sol.anchor = map.moves_right() ? "v(t_minus)=0" : "v(t_plus)=0";

    // Residual by independent series evaluation at Φt: measures truncation
    // and cross-formula consistency, not interpolation.
    double residual = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double r = std::abs(v_at(map.eval(t)) - values[i] - w(t));
        residual = std::max(residual, r);
    }
    sol.residual_sup = residual;
    if (residual > tol)
        throw ToleranceUnreachable("solve residual " + fmt(residual) +
                                   " exceeds tol " + fmt(tol));

    const double wlip = w.lipschitz_norm();
    const double vlip = sol.v.lipschitz_norm();
    sol.lip_ratio = wlip > 0 ? vlip / wlip : (vlip > 0
        ? std::numeric_limits<double>::infinity() : 0.0);
    return sol;
}

std::string SolvabilityVerdict::to_key_value() const {
    std::ostringstream out;
    out << "passed=" << (passed ? "true" : "false") << '\n'
        << "endpoint_value_minus=" << fmt(endpoint_value_minus) << '\n'
        << "endpoint_value_plus=" << fmt(endpoint_value_plus) << '\n'
        << "endpoint_decay_ok=" << (endpoint_decay_ok ? "true" : "false") << '\n'
        << "spread=" << fmt(spread) << '\n'
        << "constant=" << fmt(constant) << '\n'
        << "tol=" << fmt(tol) << '\n';
    if (!failure_reason.empty()) out << "failure_reason=" << failure_reason << '\n';
    return out.str();
}

std::string InverseSolution::to_key_value() const {
    std::ostringstream out;
    out << "residual_sup=" << fmt(residual_sup) << '\n'
        << "lip_ratio=" << fmt(lip_ratio) << '\n'
        << "constant=" << fmt(constant) << '\n'
        << "anchor=" << anchor << '\n';
    return out.str();
}

} // namespace nushift
