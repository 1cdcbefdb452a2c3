#include "nushift/jet_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "nushift/taylor_series.hpp"

namespace nushift {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_order(const ShiftMap& map, int p) {
    if (p < 1) throw OrderUnsupported("jet order must be >= 1");
    if (map.field().p_max() < p + 1)
        throw OrderUnsupported("field supplies derivatives to order " +
                               std::to_string(map.field().p_max()) +
                               ", order p=" + std::to_string(p) +
                               " needs p+1");
}

std::vector<double> factorials(int p) {
    std::vector<double> f(static_cast<std::size_t>(p) + 1, 1.0);
    for (int i = 1; i <= p; ++i)
        f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
}

// Taylor coefficients of the jet (value + derivatives/i!).
series::Series to_series(const JetState& u, const std::vector<double>& fact) {
    series::Series a(static_cast<std::size_t>(u.order) + 1, 0.0);
    a[0] = u.t;
    for (int i = 1; i <= u.order; ++i)
        a[static_cast<std::size_t>(i)] =
            u.jet[static_cast<std::size_t>(i - 1)] / fact[static_cast<std::size_t>(i)];
    return a;
}

JetState from_series(int p, const series::Series& a,
                     const std::vector<double>& fact) {
    JetState u;
    u.order = p;
    u.t = a[0];
    u.jet.resize(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i)
        u.jet[static_cast<std::size_t>(i - 1)] =
            a[static_cast<std::size_t>(i)] * fact[static_cast<std::size_t>(i)];
    return u;
}

// Taylor coefficients of the inverse map Φ⁻¹ at y: value plus d[m]
// obtained by reverting the forward expansion at x = Φ⁻¹(y).
series::Series inverse_map_series(const ShiftMap& map, double y, int p,
                                  const std::vector<double>& fact) {
    const double x = map.invert(y, 1e-14);
    series::Series c(static_cast<std::size_t>(p) + 1, 0.0);
    c[1] = 1.0 + map.alpha() * map.field().deriv(1, x);
    for (int m = 2; m <= p; ++m)
        c[static_cast<std::size_t>(m)] =
            map.alpha() * map.field().deriv(m, x) / fact[static_cast<std::size_t>(m)];
    series::Series d = series::revert(c, p);
    d[0] = x;
    return d;
}

// Composition-constant corpus for the C^p norm: smooth test functions and
// the map's own iterates.
double measure_k0(const ShiftMap& map, int p) {
    const double a = map.t_minus();
    const double b = map.t_plus();
    const int n = 801;
    std::vector<std::function<double(double)>> vs = {
        [](double t) { return std::cos(t); },
        [](double t) { return t * t; },
        [a, b](double t) { return std::sin(3.0 * t) * (t - a) * (b - t); },
    };
    std::vector<std::function<double(double)>> psis = {
        [&map](double t) { return map.eval(t); },
        [&map](double t) { return map.eval(map.eval(t)); },
    };
    double k0 = 0;
    for (const auto& v : vs) {
        const double vp = cp_norm(GridFunction::from_function(v, a, b, n), p);
        for (const auto& psi : psis) {
            const double pp = cp_norm(GridFunction::from_function(psi, a, b, n), p);
            auto comp = [&](double t) { return v(psi(t)); };
            const double cp = cp_norm(GridFunction::from_function(comp, a, b, n), p);
            k0 = std::max(k0, cp / (vp * pp));
        }
    }
    return k0;
}

// Fornberg finite-difference weights: C[i][k] multiplies the value at
// node x[i] in the k-th derivative at z.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x,
                                            int m) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> C(n, std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    C[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = static_cast<int>(std::min<std::size_t>(i, static_cast<std::size_t>(m)));
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][static_cast<std::size_t>(k)] =
                        c1 * (k * C[i - 1][static_cast<std::size_t>(k - 1)] -
                              c5 * C[i - 1][static_cast<std::size_t>(k)]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                C[j][static_cast<std::size_t>(k)] =
                    (c4 * C[j][static_cast<std::size_t>(k)] -
                     k * C[j][static_cast<std::size_t>(k - 1)]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    return C;
}

} // namespace

JetState JetState::identity(int p, double t0) {
    JetState u;
    u.order = p;
    u.t = t0;
    u.jet.assign(static_cast<std::size_t>(p), 0.0);
    u.jet[0] = 1.0;
    return u;
}

double JetState::jet_abs_sum() const {
    double s = 0;
    for (double x : jet) s += std::abs(x);
    return s;
}

double JetState::dist_to_fixed(double t_fixed) const {
    return std::abs(t - t_fixed) + jet_abs_sum();
}

JetState jet_step(const ShiftMap& map, const JetState& state) {
    const int p = state.order;
    require_order(map, p);
    const auto fact = factorials(p);
    series::Series a = to_series(state, fact);
    series::Series x(a);
    x[0] = 0.0;
    series::Series b(static_cast<std::size_t>(p) + 1, 0.0);
    b[0] = map.alpha() * map.field()(state.t);
    for (int m = 1; m <= p; ++m)
        b[static_cast<std::size_t>(m)] =
            map.alpha() * map.field().deriv(m, state.t) / fact[static_cast<std::size_t>(m)];
    const series::Series shift = series::compose(b, x, p);
    for (int i = 0; i <= p; ++i)
        a[static_cast<std::size_t>(i)] += shift[static_cast<std::size_t>(i)];
    return from_series(p, a, fact);
}

JetState jet_step_explicit(const ShiftMap& map, const JetState& state) {
    const int p = state.order;
    require_order(map, p);
    if (p > 3)
        throw OrderUnsupported("explicit recurrences are written for p <= 3");
    const double alpha = map.alpha();
    const double t = state.t;
    const double f1 = 1.0 + alpha * map.field().deriv(1, t);
    JetState out = state;
    out.t = t + alpha * map.field()(t);
    const double s = state.jet[0];
    out.jet[0] = f1 * s;
    if (p >= 2) {
        const double d2 = alpha * map.field().deriv(2, t);
        const double r = state.jet[1];
        out.jet[1] = f1 * r + d2 * s * s;
        if (p >= 3) {
            const double d3 = alpha * map.field().deriv(3, t);
            out.jet[2] = f1 * state.jet[2] + 3.0 * d2 * s * r + d3 * s * s * s;
        }
    }
    return out;
}

std::vector<JetState> propagate(const ShiftMap& map, double t0, int p,
                                int k_max) {
    require_order(map, p);
    if (k_max < 0) throw OutOfDomain("propagate needs k_max >= 0");
    std::vector<JetState> traj;
    traj.reserve(static_cast<std::size_t>(k_max) + 1);
    traj.push_back(JetState::identity(p, t0));
    for (int k = 0; k < k_max; ++k)
        traj.push_back(jet_step(map, traj.back()));
    return traj;
}

std::vector<JetState> propagate_backward(const ShiftMap& map, double t0, int p,
                                         int l_max) {
    require_order(map, p);
    if (l_max < 0) throw OutOfDomain("propagate_backward needs l_max >= 0");
    const auto fact = factorials(p);
    std::vector<JetState> traj;
    traj.reserve(static_cast<std::size_t>(l_max) + 1);
    traj.push_back(JetState::identity(p, t0));
    for (int l = 0; l < l_max; ++l) {
        const JetState& cur = traj.back();
        const series::Series inv = inverse_map_series(map, cur.t, p, fact);
        series::Series g = to_series(cur, fact);
        g[0] = 0.0;
        traj.push_back(from_series(p, series::compose(inv, g, p), fact));
    }
    return traj;
}

ContractionEstimate contraction_check(const ShiftMap& map, int p, double delta) {
    require_order(map, p);
    if (!(delta > 0.0 && delta < 0.5))
        throw InvalidDelta("contraction_check needs delta in (0, 1/2)");
    const double len = map.length();
    const double sink = map.t_sink();
    const double source = map.t_source();
    const double inward_sink = map.moves_right() ? -1.0 : 1.0;
    const int n_random = 160;

    std::mt19937 rng(20240>>1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto sample_states = [&](double fixed, double inward, double eps) {
        std::vector<JetState> states;
        // axis-aligned extremes plus random mixtures on two shells
        for (int j = 0; j <= p; ++j) {
            JetState u = JetState::identity(p, fixed);
            u.jet.assign(static_cast<std::size_t>(p), 0.0);
            if (j == 0) {
                u.t = fixed + inward * eps;
            } else {
                u.jet[static_cast<std::size_t>(j - 1)] = eps;
                states.push_back(u);
                u.jet[static_cast<std::size_t>(j - 1)] = -eps;
            }
            states.push_back(u);
        }
        for (int m = 0; m < n_random; ++m) {
            const double scale = (m % 2 == 0) ? 1.0 : 0.5;
            std::vector<double> w(static_cast<std::size_t>(p) + 1);
            double tot = 0;
            for (auto& wi : w) {
                wi = unit(rng) + 1e-3;
                tot += wi;
            }
            JetState u;
            u.order = p;
            u.t = fixed + inward * eps * scale * w[0] / tot;
            u.jet.resize(static_cast<std::size_t>(p));
            for (int j = 1; j <= p; ++j) {
                const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
                u.jet[static_cast<std::size_t>(j - 1)] =
                    sign * eps * scale * w[static_cast<std::size_t>(j)] / tot;
            }
            states.push_back(u);
        }
        return states;
    };

    for (double eps = len / 100.0; eps >= 1e-8 * len; eps *= 0.5) {
        // Derivative drift control near both rest points (the proof's
        // delta-neighborhood condition).
        bool drift_ok = true;
        for (double fixed : {sink, source}) {
            const double inward = (fixed == sink) ? inward_sink : -inward_sink;
            const double slope0 = map.field().deriv(1, fixed);
            for (int i = 1; i <= 8; ++i) {
                const double t = fixed + inward * eps * i / 8.0;
                if (std::abs(map.field().deriv(1, t) - slope0) >
                    delta * std::abs(slope0)) {
                    drift_ok = false;
                    break;
                }
            }
        }
        if (!drift_ok) continue;

        double worst_sink = 0, worst_jets = 0, worst_source = 0;
        for (const auto& u : sample_states(sink, inward_sink, eps)) {
            const JetState fu = jet_step(map, u);
            const double du = u.dist_to_fixed(sink);
            if (du > 0)
                worst_sink = std::max(worst_sink, fu.dist_to_fixed(sink) / du);
            const double ju = u.jet_abs_sum();
            if (ju > 0)
                worst_jets = std::max(worst_jets, fu.jet_abs_sum() / ju);
        }
        for (const auto& u : sample_states(source, -inward_sink, eps)) {
            const JetState fu = jet_step(map, u);
            const double dfu = fu.dist_to_fixed(source);
            if (dfu > 0)
                worst_source =
                    std::max(worst_source, u.dist_to_fixed(source) / dfu);
        }
        const double eta =
            1.0 - std::max({worst_sink, worst_jets, worst_source});
        if (eta > 0.0) return {eta, eps};
    }
    throw ContractionNotFound(
        "no contractive neighborhood found down to the minimum radius; "
        "|alpha| may be too large for order p=" + std::to_string(p));
}

CpReport cp_bound(const ShiftMap& map, int p, const ConstantsReport& report) {
    const auto contraction = contraction_check(map, p, report.delta);
    CpReport out;
    out.p = p;
    out.eta = contraction.eta;
    out.eps_jet = contraction.eps_jet;

    const double sink = map.t_sink();
    const std::int64_t cap = 10 * report.N_alpha + 10000;
    const int n_probes = 33;
    const double lo = map.t_minus() + report.eps_phi;
    const double hi = map.t_plus() - report.eps_phi;

    out.N_K = 0;
    out.sum_bound = 0;
    for (int i = 0; i < n_probes; ++i) {
        const double t0 = lo + (hi - lo) * i / (n_probes - 1);
        JetState u = JetState::identity(p, t0);
        double partial = 0;
        std::int64_t entered = -1;
        for (std::int64_t k = 0; k <= cap; ++k) {
            if (u.dist_to_fixed(sink) < contraction.eps_jet) {
                entered = k;
                break;
            }
            partial += u.jet_abs_sum();
            u = jet_step(map, u);
        }
        if (entered < 0)
            throw NoConvergence("jet trajectory failed to enter the contraction "
                                "neighborhood within the iteration cap");
        const double bound = partial + u.jet_abs_sum() / contraction.eta;
        out.N_K = std::max(out.N_K, entered);
        out.sum_bound = std::max(out.sum_bound, bound);
    }

    out.k0_composition = measure_k0(map, p);
    out.sup_part = report.K_phi * map.length();
    out.K_cp = std::abs(map.alpha()) *
               (out.sup_part + out.k0_composition * out.sum_bound);
    return out;
}

double cp_norm(const GridFunction& f, int p) {
    if (p < 0) throw OutOfDomain("cp_norm needs p >= 0");
    const std::size_t n = f.size();
    const std::size_t width = 2 * static_cast<std::size_t>(p) + 1;
    if (n < width)
        throw GridTooCoarse("cp_norm needs at least 2p+1 grid points");
    if (p == 0) return f.sup_norm();

    double best = 0;
    const auto grid = f.grid();
    const auto vals = f.values();
    for (std::size_t i = static_cast<std::size_t>(p); i + static_cast<std::size_t>(p) < n; ++i) {
        const std::size_t first = i - static_cast<std::size_t>(p);
        const auto weights =
            fd_weights(grid[i], grid.subspan(first, width), p);
        double total = 0;
        for (int ord = 0; ord <= p; ++ord) {
            double dv = 0;
            for (std::size_t j = 0; j < width; ++j)
                dv += weights[j][static_cast<std::size_t>(ord)] * vals[first + j];
            total += std::abs(dv);
        }
        best = std::max(best, total);
    }
    return best;
}

std::string CpReport::to_key_value() const {
    std::ostringstream out;
    out << "p=" << p << '\n'
        << "eta=" << fmt(eta) << '\n'
        << "eps_jet=" << fmt(eps_jet) << '\n'
        << "N_K=" << N_K << '\n'
        << "sum_bound=" << fmt(sum_bound) << '\n'
        << "k0_composition=" << fmt(k0_composition) << '\n'
        << "sup_part=" << fmt(sup_part) << '\n'
        << "K_cp=" << fmt(K_cp) << '\n';
    return out.str();
}

void write_jet_csv(std::ostream& out, const std::vector<JetState>& states,
                   int k_first, int k_stride) {
    static const char* names[] = {"s", "r", "q"};
    out << "k,t";
    if (!states.empty()) {
        for (int j = 0; j < states.front().order; ++j) {
            if (j < 3) out << ',' << names[j];
            else out << ",d" << (j + 1);
        }
    }
    out << '\n';
    int k = k_first;
    for (const auto& u : states) {
        out << k << ',' << fmt(u.t);
        for (double x : u.jet) out << ',' << fmt(x);
        out << '\n';
        k += k_stride;
    }
}

} // namespace nushift
