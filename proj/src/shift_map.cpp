#include "nushift/shift_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nushift {

ShiftMap::ShiftMap(PerturbationField field, double alpha)
    : field_(std::move(field)), alpha_(alpha) {
    if (alpha_ == 0.0)
        throw AmplitudeTooLarge("alpha must be nonzero");
    if (std::abs(alpha_) >= 1.0 / field_.lip_norm()) {
        std::ostringstream msg;
        msg << "|alpha|=" << std::abs(alpha_) << " violates |alpha| < alpha_phi="
            << 1.0 / field_.lip_norm() << " (Lipschitz invertibility bound)";
        throw AmplitudeTooLarge(msg.str());
    }
    const double mid = 0.5 * (field_.t_minus() + field_.t_plus());
    moves_right_ = alpha_ * field_(mid) > 0.0;
    domain_slack_ = 1e-9 * field_.length();
}

double ShiftMap::eval(double t) const {
    const double a = t_minus();
    const double b = t_plus();
    if (t < a - domain_slack_ || t > b + domain_slack_) {
        std::ostringstream msg;
        msg << "t=" << t << " outside [" << a << ", " << b << "]";
        throw OutOfDomain(msg.str());
    }
    t = std::clamp(t, a, b);
    return std::clamp(t + alpha_ * field_(t), a, b);
}

double ShiftMap::invert(double y, double tol, int max_iter) const {
    const double a = t_minus();
    const double b = t_plus();
    if (y < a - domain_slack_ || y > b + domain_slack_)
        throw OutOfDomain("invert target outside the interval");
    y = std::clamp(y, a, b);

    // g(t) = Φ(t) − y is strictly increasing with g' ≥ 1 − |α|‖φ‖_Lip > 0,
    // so [a, b] brackets the root.
    double lo = a, hi = b;
    double t = std::clamp(y - alpha_ * field_(y), a, b);
    double g = eval(t) - y;
    int iter = 0;
    while (std::abs(g) > tol) {
        if (++iter > max_iter) {
            std::ostringstream msg;
            msg << "invert stalled at residual " << std::abs(g)
                << " for y=" << y;
            throw NoConvergence(msg.str());
        }
        if (g > 0) hi = t; else lo = t;
        const double slope = 1.0 + alpha_ * field_.deriv(1, t);
        double next = t - g / slope;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        t = next;
        g = eval(t) - y;
    }

    // Snap to the best double: deterministic, and makes invert(eval(t))
    // recover t bitwise whenever a zero-residual preimage exists.
    double best = t;
    double best_res = std::abs(eval(t) - y);
    auto consider = [&](double cand) {
        if (cand < a || cand > b) return;
        const double res = std::abs(eval(cand) - y);
        if (res < best_res || (res == best_res && cand < best)) {
            best = cand;
            best_res = res;
        }
    };
    double up = t, down = t;
    for (int i = 0; i < 3; ++i) {
        up = std::nextafter(up, b + 1.0);
        down = std::nextafter(down, a - 1.0);
        consider(up);
        consider(down);
    }
    return best;
}

Orbit ShiftMap::orbit(double t0, int k_min, int k_max) const {
    if (k_min > 0 || k_max < 0 || k_min > k_max)
        throw OutOfDomain("orbit needs k_min <= 0 <= k_max");
    Orbit out;
    out.base = t0;
    out.k_min = k_min;
    out.points.assign(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    out.points[static_cast<std::size_t>(-k_min)] = std::clamp(t0, t_minus(), t_plus());
    double t = out.points[static_cast<std::size_t>(-k_min)];
    for (int k = 1; k <= k_max; ++k) {
        t = eval(t);
        out.points[static_cast<std::size_t>(k - k_min)] = t;
    }
    t = out.points[static_cast<std::size_t>(-k_min)];
    for (int k = -1; k >= k_min; --k) {
        t = invert(t, 1e-14);
        out.points[static_cast<std::size_t>(k - k_min)] = t;
    }
    return out;
}

double ShiftMap::iterate(double t, int k) const {
    for (; k > 0; --k) t = eval(t);
    for (; k < 0; ++k) t = invert(t, 1e-14);
    return t;
}

} // namespace nushift
