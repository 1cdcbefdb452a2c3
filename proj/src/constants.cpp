#include "nushift/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace nushift {

namespace {

constexpr double kEnvelopeSafety = 1.25;
constexpr int kProbePoints = 2048;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> chebyshev_grid(double a, double b, int n) {
    std::vector<double> ts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        ts[static_cast<std::size_t>(i)] =
            a + (b - a) * 0.5 * (1.0 - std::cos(std::numbers::pi * i / n));
    return ts;
}

double envelope_at(const PerturbationField& field, double t, double t_star,
                   double slope) {
    if (std::abs(slope) == 0.0)
        throw DegeneratePerturbation("endpoint slope vanishes; envelope undefined");
    const double d = t - t_star;
    if (std::abs(d) <= 1e-12 * field.length())
        return 0.0;
    return field(t) / (slope * d) - 1.0;
}

/// Measured Lipschitz bound for both envelopes: max adjacent divided
/// difference over the probe grid, times a safety factor. trapezoid_check
/// catches the (unlikely) underestimate.
double measure_envelope_lip(const PerturbationField& field) {
    const auto ts = chebyshev_grid(field.t_minus(), field.t_plus(), kProbePoints);
    double lip = 0;
    auto prev = envelope_functions(field, ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const auto cur = envelope_functions(field, ts[i]);
        const double h = ts[i] - ts[i - 1];
        lip = std::max(lip, std::abs(cur.first - prev.first) / h);
        lip = std::max(lip, std::abs(cur.second - prev.second) / h);
        prev = cur;
    }
    return kEnvelopeSafety * lip;
}

ConstantsReport assemble(const PerturbationField& field, double alpha,
                         double delta, double E_phi) {
    if (!(delta > 0.0 && delta < 0.5))
        throw InvalidDelta("delta must lie in (0, 1/2), got " + std::to_string(delta));
    const double lip = field.lip_norm();
    if (std::abs(alpha) >= 1.0 / lip)
        throw AmplitudeTooLarge("|alpha| >= alpha_phi = 1/||phi||_Lip");

    ConstantsReport r;
    r.delta = delta;
    r.alpha = alpha;
    r.lip_norm = lip;
    r.alpha_max = 1.0 / lip;
    r.phi_prime_inf = field.slope_inf();
    r.E_phi = E_phi;
    r.t_minus = field.t_minus();
    r.t_plus = field.t_plus();

    const double len = field.length();
    r.eps_phi = std::min(delta / E_phi, 0.25 * len * (1.0 - 1e-9));
    r.m_phi = r.phi_prime_inf * r.eps_phi * (1.0 - delta);
    const double aa = std::abs(alpha);
    r.N_alpha = static_cast<std::int64_t>(
                    std::ceil((len - 2.0 * r.eps_phi) / (aa * r.m_phi))) + 1;
    r.V_phi = 2.0 * std::pow(1.0 + aa * lip, static_cast<double>(r.N_alpha)) /
              (aa * r.phi_prime_inf * (1.0 - 2.0 * delta));
    r.K_1 = (2.0 + 2.0 * r.eps_phi +
             aa * static_cast<double>(r.N_alpha) * (1.0 - delta) * r.phi_prime_inf) /
            (aa * (1.0 - delta) * r.phi_prime_inf * (len - 2.0 * r.eps_phi));
    r.K_phi = std::max(r.K_1, r.V_phi);
    r.K_phi_from_V = r.V_phi >= r.K_1;
    r.stated_alpha_chain_holds =
        aa < (1.0 - delta) / r.phi_prime_inf &&
        (1.0 - delta) / r.phi_prime_inf < 1.0 / lip;
    return r;
}

} // namespace

std::pair<double, double> envelope_functions(const PerturbationField& field,
                                             double t) {
    const double e_minus =
        envelope_at(field, t, field.t_minus(), field.deriv(1, field.t_minus()));
    const double e_plus =
        envelope_at(field, t, field.t_plus(), field.deriv(1, field.t_plus()));
    return {e_minus, e_plus};
}

ConstantsReport compute_constants(const ShiftMap& map, double delta) {
    return assemble(map.field(), map.alpha(), delta,
                    measure_envelope_lip(map.field()));
}

double trapezoid_check(const ShiftMap& map, const ConstantsReport& report,
                       std::span<const double> grid) {
    const double a = report.t_minus;
    const double b = report.t_plus;
    const double c = report.phi_prime_inf * (1.0 - report.delta);
    double slack = std::numeric_limits<double>::infinity();
    double worst_t = a;
    for (double t : grid) {
        double trap;
        if (t <= a + report.eps_phi)
            trap = c * (t - a);
        else if (t >= b - report.eps_phi)
            trap = c * (b - t);
        else
            trap = report.m_phi;
        const double s = std::abs(map.field()(t)) - trap;
        if (s < slack) {
            slack = s;
            worst_t = t;
        }
    }
    if (slack < 0.0) {
        std::ostringstream msg;
        msg << "trapezoid bound violated at t=" << worst_t << " by " << -slack
            << "; E_phi probe grid too coarse";
        throw TrapezoidViolation(msg.str());
    }
    return slack;
}

std::vector<ScalingRow> scaling_study(const PerturbationField& field,
                                      double delta,
                                      std::span<const double> alphas) {
    const double E_phi = measure_envelope_lip(field);
    std::vector<ScalingRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        const auto r = assemble(field, alpha, delta, E_phi);
        rows.push_back({alpha, r.N_alpha, r.V_phi, r.K_1, r.K_phi,
                        std::abs(alpha) * r.K_phi});
    }
    return rows;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
    out << "alpha,N_alpha,V_phi,K_1,K_phi,alpha_K_phi\n";
    for (const auto& r : rows)
        out << fmt(r.alpha) << ',' << r.N_alpha << ',' << fmt(r.V_phi) << ','
            << fmt(r.K_1) << ',' << fmt(r.K_phi) << ',' << fmt(r.alpha_K_phi)
            << '\n';
}

std::string ConstantsReport::to_key_value() const {
    std::ostringstream out;
    out << "delta=" << fmt(delta) << '\n'
        << "alpha=" << fmt(alpha) << '\n'
        << "lip_norm=" << fmt(lip_norm) << '\n'
        << "alpha_max=" << fmt(alpha_max) << '\n'
        << "phi_prime_inf=" << fmt(phi_prime_inf) << '\n'
        << "E_phi=" << fmt(E_phi) << '\n'
        << "eps_phi=" << fmt(eps_phi) << '\n'
        << "m_phi=" << fmt(m_phi) << '\n'
        << "N_alpha=" << N_alpha << '\n'
        << "V_phi=" << fmt(V_phi) << '\n'
        << "K_1=" << fmt(K_1) << '\n'
        << "K_phi=" << fmt(K_phi) << '\n'
        << "K_phi_branch=" << (K_phi_from_V ? "V_phi" : "K_1") << '\n'
        << "t_minus=" << fmt(t_minus) << '\n'
        << "t_plus=" << fmt(t_plus) << '\n'
        << "stated_alpha_chain_holds="
        << (stated_alpha_chain_holds ? "true" : "false") << " (unverified)\n";
    return out.str();
}

} // namespace nushift
