#include "nushift/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "nushift/grid_function.hpp"

namespace nushift {

namespace {

// Endpoint-clustered probe grid: Chebyshev nodes over the whole interval
// plus a geometric ladder walking into each endpoint.
std::vector<double> probe_grid(double a, double b, int cheb_points) {
    std::vector<double> ts;
    const double len = b - a;
    for (int i = 0; i <= cheb_points; ++i) {
        const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * i / cheb_points));
        ts.push_back(a + len * u);
    }
    for (double d = 0.125 * len; d >= 3e-6 * len; d *= 0.5) {
        ts.push_back(a + d);
        ts.push_back(b - d);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

double measure_lip(const PerturbationField::Deriv& deriv, double a, double b) {
    double lip = 0;
    for (double t : probe_grid(a, b, 2048))
        lip = std::max(lip, std::abs(deriv(1, t)));
    return lip;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * static_cast<double>(i));
    if (d.empty()) d.push_back(0.0);
    return d;
}

double poly_eval(const std::vector<double>& c, double t) {
    double v = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        v = v * t + c[i];
    return v;
}

} // namespace

PerturbationField::PerturbationField(Eval eval, Deriv deriv, int p_max,
                                     double t_minus, double t_plus,
                                     std::string description,
                                     bool approximate_derivs)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), p_max_(p_max),
      t_minus_(t_minus), t_plus_(t_plus),
      description_(std::move(description)),
      approximate_derivs_(approximate_derivs) {
    if (!(t_plus_ > t_minus_))
        throw OutOfDomain("field interval must have t_minus < t_plus");
    if (p_max_ < 2)
        throw OrderUnsupported("p_max must be at least 2");
    lip_norm_ = measure_lip(deriv_, t_minus_, t_plus_);
}

double PerturbationField::deriv(int order, double t) const {
    if (order < 1 || order > p_max_)
        throw OrderUnsupported("derivative order " + std::to_string(order) +
                               " outside 1.." + std::to_string(p_max_));
    return deriv_(order, t);
}

double PerturbationField::slope_inf() const {
    return std::min(std::abs(deriv_(1, t_minus_)), std::abs(deriv_(1, t_plus_)));
}

PerturbationField PerturbationField::sine() {
    return sine_on(0.0, std::numbers::pi);
}

PerturbationField PerturbationField::sine_on(double a, double b) {
    // sin^(j)(t) = sin(t + jπ/2)
    auto eval = [](double t) { return std::sin(t); };
    auto deriv = [](int j, double t) {
        return std::sin(t + 0.5 * std::numbers::pi * j);
    };
    std::ostringstream name;
    name << "sine on [" << a << ", " << b << "]";
    return PerturbationField(eval, deriv, 16, a, b, name.str(), false);
}

PerturbationField PerturbationField::scaled_sine(double omega) {
    if (omega <= 0) throw OutOfDomain("scaled_sine needs omega > 0");
    auto eval = [omega](double t) { return std::sin(omega * t) / omega; };
    auto deriv = [omega](int j, double t) {
        return std::pow(omega, j - 1) *
               std::sin(omega * t + 0.5 * std::numbers::pi * j);
    };
    std::ostringstream name;
    name << "sin(" << omega << " t)/" << omega;
    return PerturbationField(eval, deriv, 16, 0.0, std::numbers::pi / omega,
                             name.str(), false);
}

PerturbationField PerturbationField::poly_bump(double length,
                                               const std::vector<double>& q) {
    if (length <= 0) throw OutOfDomain("poly_bump needs length > 0");
    if (q.empty()) throw OutOfDomain("poly_bump needs q coefficients");
    // coefficients of t(L − t)·q(t)
    std::vector<double> base(q.size() + 2, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
        base[i + 1] += length * q[i];
        base[i + 2] -= q[i];
    }
    auto tables = std::make_shared<std::vector<std::vector<double>>>();
    tables->push_back(base);
    for (int j = 1; j <= 16; ++j)
        tables->push_back(poly_derivative(tables->back()));
    auto eval = [tables](double t) { return poly_eval((*tables)[0], t); };
    auto deriv = [tables](int j, double t) {
        return poly_eval((*tables)[static_cast<std::size_t>(j)], t);
    };
    return PerturbationField(eval, deriv, 16, 0.0, length, "polynomial bump", false);
}

PerturbationField PerturbationField::custom(Eval eval, Deriv deriv, int p_max,
                                            double a, double b,
                                            std::string description) {
    return PerturbationField(std::move(eval), std::move(deriv), p_max, a, b,
                             std::move(description), false);
}

PerturbationField PerturbationField::sampled(const std::vector<double>& ts,
                                             const std::vector<double>& values) {
    auto interp = std::make_shared<MonotoneCubic>(ts, values);
    auto eval = [interp](double t) { return (*interp)(t); };
    auto deriv = [interp](int j, double t) { return interp->deriv(j, t); };
    return PerturbationField(eval, deriv, 2, ts.front(), ts.back(),
                             "sampled (approximate derivatives)", true);
}

NondegeneracyCertificate validate_nondegeneracy(const PerturbationField& field,
                                                double tol) {
    const double a = field.t_minus();
    const double b = field.t_plus();
    const double len = b - a;
    const auto probes = probe_grid(a, b, 256);

    NondegeneracyCertificate cert;
    cert.tol = tol;
    cert.value_at_minus = std::abs(field(a));
    cert.value_at_plus = std::abs(field(b));
    cert.slope_at_minus = field.deriv(1, a);
    cert.slope_at_plus = field.deriv(1, b);

    if (cert.value_at_minus > tol || cert.value_at_plus > tol) {
        std::ostringstream msg;
        msg << "phi does not vanish at the endpoints: |phi(t_minus)|="
            << cert.value_at_minus << ", |phi(t_plus)|=" << cert.value_at_plus;
        throw EndpointMismatch(msg.str());
    }
    if (std::abs(cert.slope_at_minus) < 10 * tol ||
        std::abs(cert.slope_at_plus) < 10 * tol) {
        std::ostringstream msg;
        msg << "endpoint slope vanishes: phi'(t_minus)=" << cert.slope_at_minus
            << ", phi'(t_plus)=" << cert.slope_at_plus;
        throw DegeneratePerturbation(msg.str());
    }

    // Interior zeros: a sign change or a vanishing value away from the
    // endpoint wedges means two roots are not consecutive.
    const double margin = len / 64.0;
    double prev = 0.0;
    bool have_prev = false;
    for (double t : probes) {
        if (t - a < margin || b - t < margin) continue;
        const double v = field(t);
        if (std::abs(v) <= tol)
            throw InteriorZero("phi vanishes at interior t=" + std::to_string(t));
        if (have_prev && prev * v < 0.0)
            throw InteriorZero("phi changes sign near t=" + std::to_string(t));
        prev = v;
        have_prev = true;
    }

    double ratio = 0;
    for (double t : probes) {
        const double dm = t - a;
        const double dp = b - t;
        if (dm > 0 && dm <= 0.25 * len)
            ratio = std::max(ratio,
                             std::abs(field(t) - cert.slope_at_minus * dm) / (dm * dm));
        if (dp > 0 && dp <= 0.25 * len)
            ratio = std::max(ratio,
                             std::abs(field(t) - cert.slope_at_plus * (t - b)) / (dp * dp));
    }
    cert.taylor_ratio = ratio;
    return cert;
}

} // namespace nushift
