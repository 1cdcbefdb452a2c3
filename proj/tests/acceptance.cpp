// Acceptance suite: every release gate runs here, one PASS/FAIL line each,
// with the measured quantities printed so a red line is diagnosable from
// the log alone. Gates cover round-trip inversion, telescoping exactness,
// solvability rejection, the certified Lipschitz and geometric-sum
// constants, O(1/alpha) scaling, jet correctness, the contraction margin,
// the kernel dichotomy, and the Gram isometry.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nushift/commands.hpp"
#include "nushift/constants.hpp"
#include "nushift/inverse_solver.hpp"
#include "nushift/jet_system.hpp"
#include "nushift/kernel_space.hpp"

using namespace nushift;
using std::numbers::pi;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("%s  [%2d] %-28s %s\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start).count();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

GridFunction telescope(const ShiftMap& map,
                       const std::function<double(double)>& v0, int n) {
    return GridFunction::from_function(
        [map, v0](double t) { return v0(map.eval(t)) - v0(t); },
        map.t_minus(), map.t_plus(), n);
}

std::vector<double> probes_interior(const ShiftMap& map, int n) {
    std::vector<double> ps;
    for (int i = 1; i <= n; ++i)
        ps.push_back(map.t_minus() + map.length() * i / (n + 1.0));
    return ps;
}

struct RoundTripResult {
    double alpha = 0;
    std::string v0;
    double const_error = 0;    // max - min of solve(w) - v0 over the grid
    double lip_ratio = 0;
    double K_phi = 0;
    double seconds = 0;
};

std::vector<RoundTripResult> run_round_trips() {
    const std::vector<std::pair<std::string, std::function<double(double)>>>
        corpus = {
            {"cos", [](double t) { return std::cos(t); }},
            {"t2", [](double t) { return t * t; }},
            {"sin3damp",
             [](double t) { return std::sin(3.0 * t) * t * (pi - t); }},
            {"hat",
             [](double t) {
                 return std::max(0.0, 1.0 - std::abs(t - 0.5 * pi) / (0.5 * pi));
             }},
        };
    std::vector<RoundTripResult> results;
    for (double alpha : {0.05, 0.1, 0.3}) {
        const ShiftMap map(PerturbationField::sine(), alpha);
        const auto report_c = compute_constants(map, 0.1);
        for (const auto& [name, v0] : corpus) {
            const auto start = std::chrono::steady_clock::now();
            const auto w = telescope(map, v0, 1001);
            const auto sol = solve(map, w, report_c, 1e-10);
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = 0; i < sol.v.size(); ++i) {
                const double d = sol.v.value_at(i) - v0(sol.v.node(i));
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
            results.push_back({alpha, name, hi - lo, sol.lip_ratio,
                               report_c.K_phi, seconds_since(start)});
        }
    }
    return results;
}

void criterion_1_and_4() {
    const auto runs = run_round_trips();

    double worst_err = 0, worst_time = 0;
    for (const auto& r : runs) {
        worst_err = std::max(worst_err, r.const_error);
        worst_time = std::max(worst_time, r.seconds);
    }
    report(1, "round-trip inversion", worst_err <= 1e-8 && worst_time <= 5.0,
           "4 v0 x alpha {0.05,0.1,0.3}: worst constancy error " +
               fmt(worst_err) + " (<= 1e-8), worst case " + fmt(worst_time) +
               " s (<= 5)");

    bool lip_ok = true;
    double worst_margin = 0;
    for (const auto& r : runs) {
        lip_ok = lip_ok && r.lip_ratio <= r.K_phi;
        worst_margin = std::max(worst_margin, r.lip_ratio / r.K_phi);
    }
    report(4, "certified Lipschitz bound", lip_ok,
           "lip_ratio <= K_phi for all 12 cases; largest ratio/K_phi = " +
               fmt(worst_margin));
}

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto rc = compute_constants(map, 0.1);
    const auto w = GridFunction::from_function(
        [map](double t) { return map.alpha() * map.field()(t); }, 0.0, pi, 1001);
    const auto verdict =
        check_solvability(map, w, probes_interior(map, 32), 1e-10, rc);
    const auto sol = solve(map, w, rc, 1e-10);
    double worst_v = 0;
    for (std::size_t i = 0; i < sol.v.size(); ++i)
        worst_v = std::max(worst_v,
                           std::abs(sol.v.value_at(i) - sol.v.node(i)));
    const double secs = seconds_since(start);
    const bool pass = verdict.passed &&
                      std::abs(verdict.constant - pi) <= 1e-10 &&
                      worst_v <= 1e-10 && secs <= 1.0;
    report(2, "telescoping exactness", pass,
           "w = alpha sin t: |constant - pi| = " +
               fmt(std::abs(verdict.constant - pi)) + ", sup|v - t| = " +
               fmt(worst_v) + ", " + fmt(secs) + " s");
}

void criterion_3() {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto rc = compute_constants(map, 0.1);
    const double tol = 1e-10;

    const auto w_sin2 = GridFunction::from_function(
        [](double t) { return std::sin(2.0 * t); }, 0.0, pi, 1001);
    const auto verdict =
        check_solvability(map, w_sin2, probes_interior(map, 32), tol, rc);
    const bool sin2_rejected = !verdict.passed && verdict.spread >= 1e3 * tol;

    const auto w_one = GridFunction::from_function([](double) { return 1.0; },
                                                   0.0, pi, 101);
    const auto verdict_one =
        check_solvability(map, w_one, probes_interior(map, 32), tol, rc);
    const bool one_rejected = !verdict_one.passed && !verdict_one.endpoint_decay_ok;

    // Control: the rejection machinery trips on a genuinely out-of-range
    // input (kinked bump), so a NO above is a property of sin(2t) itself.
    const double half = 0.5 * pi - 1.0;
    const auto w_hat = GridFunction::from_function(
        [half](double t) {
            return std::max(0.0, 1.0 - std::abs(t - 0.5 * pi) / half);
        },
        0.0, pi, 2001);
    const auto verdict_hat =
        check_solvability(map, w_hat, probes_interior(map, 32), tol, rc);
    const bool hat_rejected = !verdict_hat.passed && verdict_hat.spread >= 1e3 * tol;

    report(3, "solvability rejection", sin2_rejected && one_rejected,
           std::string("w=1 rejected on endpoint decay: ") +
               (one_rejected ? "yes" : "NO") +
               "; sin(2t) rejected: " + (sin2_rejected ? "yes" : "NO") +
               " (measured spread " + fmt(verdict.spread) +
               "; its bilateral sums are constant to ~1e-35 at alpha=0.1, the "
               "analytic obstruction being exponentially small in 1/alpha, so "
               "this gate cannot trip; control: kinked bump rejected with "
               "spread " + fmt(verdict_hat.spread) + " = " +
               fmt(verdict_hat.spread / tol) + "x tol: " +
               (hat_rejected ? "yes" : "NO") + ")");
}

void criterion_5() {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto rc = compute_constants(map, 0.1);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> dist(rc.eps_phi, pi - 1e-6);
    bool ok = true;
    double worst_frac = 0;
    for (int trial = 0; trial < 100; ++trial) {
        double ta = dist(rng), tb = dist(rng);
        if (ta > tb) std::swap(ta, tb);
        if (tb - ta < 1e-12) continue;
        double xa = ta, xb = tb, sum = 0, gap = tb - ta;
        while (gap > 1e-12 * (tb - ta) * 1e-3) {
            sum += gap;
            xa = map.eval(xa);
            xb = map.eval(xb);
            gap = std::abs(xb - xa);
            if (sum > 1e12) break;
        }
        ok = ok && sum <= rc.V_phi * (tb - ta);
        worst_frac = std::max(worst_frac, sum / (rc.V_phi * (tb - ta)));
    }
    report(5, "geometric-sum constant", ok,
           "100 random pairs: max observed sum / (V_phi |tb-ta|) = " +
               fmt(worst_frac));
}

void criterion_6() {
    const std::vector<double> alphas = {0.4, 0.2, 0.1, 0.05, 0.025};
    const auto rows = scaling_study(PerturbationField::sine(), 0.1, alphas);
    double lo = 1e300, hi = 0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.alpha_K_phi);
        hi = std::max(hi, r.alpha_K_phi);
    }
    const bool kphi_ok = hi / lo < 10.0;

    double jlo = 1e300, jhi = 0;
    for (double a : {0.2, 0.1, 0.05}) {
        const ShiftMap map(PerturbationField::sine(), a);
        const auto cp = cp_bound(map, 1, compute_constants(map, 0.1));
        const double scaled = a * cp.sum_bound;
        jlo = std::min(jlo, scaled);
        jhi = std::max(jhi, scaled);
    }
    const bool jets_ok = jhi / jlo < 10.0;

    report(6, "O(1/alpha) scaling", kphi_ok && jets_ok,
           "alpha*K_phi spread x" + fmt(hi / lo) +
               " (<10), alpha*sum_bound spread x" + fmt(jhi / jlo) + " (<10)");
}

// Independent finite-difference oracle on the scalar orbit map.
double fd_deriv(const std::function<double(double)>& f, double t, int order) {
    switch (order) {
        case 1: {
            const double h = 1e-3;
            return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) /
                   (12 * h);
        }
        case 2: {
            const double h = 1e-3;
            return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) -
                    f(t - 2 * h)) / (12 * h * h);
        }
        default: {
            auto d3 = [&](double h) {
                return (f(t + 2 * h) - 2 * f(t + h) + 2 * f(t - h) -
                        f(t - 2 * h)) / (2 * h * h * h);
            };
            const double h = 2e-3;
            return (4.0 * d3(0.5 * h) - d3(h)) / 3.0;
        }
    }
}

void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    const ShiftMap map(PerturbationField::sine(), 0.1);
    double worst = 0;
    for (int b = 0; b < 9; ++b) {
        const double t0 = 0.5 + (2.6 - 0.5) * b / 8.0;
        const auto traj = propagate(map, t0, 3, 50);
        for (int k : {1, 10, 25, 50}) {
            auto f = [&map, k](double t) { return map.iterate(t, k); };
            const auto& u = traj[static_cast<std::size_t>(k)];
            for (int ord = 1; ord <= 3; ++ord) {
                const double fd = fd_deriv(f, t0, ord);
                const double err = std::abs(u.jet[ord - 1] - fd) /
                                   std::max(1.0, std::abs(fd));
                worst = std::max(worst, err);
            }
        }
    }
    const double secs = seconds_since(start);
    report(7, "jet correctness", worst <= 1e-5 && secs <= 10.0,
           "(s,r,q) vs central differences, k<=50, 9 base points: worst "
           "scaled error " + fmt(worst) + ", " + fmt(secs) + " s");
}

void criterion_8() {
    bool ok = true;
    std::string detail = "p=1, eta vs alpha:";
    for (double a : {0.05, 0.1}) {
        const ShiftMap map(PerturbationField::sine(), a);
        const auto est = contraction_check(map, 1, 0.1);
        const double rel = std::abs(est.eta - a) / a;
        ok = ok && rel <= 0.25;
        detail += " alpha=" + fmt(a) + " eta=" + fmt(est.eta) + " (" +
                  fmt(100 * rel) + "%)";
    }
    report(8, "contraction at the sink", ok, detail);
}

void criterion_9() {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const std::vector<double> radii = {0.1, 0.01, 0.001};
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(1e-3, pi - 1e-3);
    std::vector<double> probes(100);
    for (auto& p : probes) p = dist(rng);

    const auto flat = KernelElement::constant(map, 1.0, 2.0);
    const auto step = KernelElement::step(map, 1.0, 0.0, 1.0, 0.5);

    bool flat_ok = true, step_ok = true;
    for (auto endpoint : {Endpoint::Minus, Endpoint::Plus}) {
        for (const auto& row : oscillation_profile(map, flat, endpoint, radii))
            flat_ok = flat_ok && row.oscillation == 0.0;
        for (const auto& row : oscillation_profile(map, step, endpoint, radii))
            step_ok = step_ok && row.oscillation >= 0.99;
    }
    const double inv_flat = verify_invariance(map, flat, probes);
    const double inv_step = verify_invariance(map, step, probes);
    report(9, "kernel dichotomy",
           flat_ok && step_ok && inv_flat == 0.0 && inv_step == 0.0,
           "constant-seed oscillation all zero: " +
               std::string(flat_ok ? "yes" : "NO") +
               "; step-seed oscillation >= 0.99 at radii {0.1,0.01,0.001}: " +
               std::string(step_ok ? "yes" : "NO") + "; invariance defects " +
               fmt(inv_flat) + ", " + fmt(inv_step) + " (exactly 0)");
}

void criterion_10() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (double a : {0.0, 0.1, 0.3}) {
        const auto summary = gram_isometry(a, 16, 1e-11);
        worst = std::max({worst, summary.max_offdiag,
                          summary.max_diag_deviation});
    }
    const double secs = seconds_since(start);
    report(10, "Gram isometry", worst <= 1e-8 && secs <= 30.0,
           "alpha {0,0.1,0.3}, 16 modes: max |G - (pi/2) I| entry = " +
               fmt(worst) + ", " + fmt(secs) + " s");
}

} // namespace

int main() {
    std::printf("acceptance suite (phi = sin on [0, pi] unless stated)\n");
    criterion_1_and_4();
    criterion_2();
    criterion_3();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures)
        std::printf("%d criterion(s) failed\n", g_failures);
    else
        std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
