#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nushift/errors.hpp"

namespace nushift {

/// The perturbation φ of a shift Φ(t) = t + αφ(t): a scalar function on
/// [t_minus, t_plus] vanishing exactly at the two endpoints, nonzero inside,
/// with simple zeros (φ' ≠ 0 at both endpoints) and a quadratic Taylor
/// remainder there.
///
/// Derivatives up to p_max are supplied by the family descriptor: exact
/// formulas for the analytic built-ins, finite differences of the monotone
/// cubic interpolant for sampled data (flagged approximate_derivs).
/// Immutable after construction.
class PerturbationField {
public:
    using Eval = std::function<double(double)>;
    using Deriv = std::function<double(int, double)>;

    PerturbationField(Eval eval, Deriv deriv, int p_max,
                      double t_minus, double t_plus,
                      std::string description, bool approximate_derivs);

    // Built-in analytic families.
    static PerturbationField sine();                       // sin t on [0, π]
    static PerturbationField sine_on(double a, double b);  // sin t on [a, b]
    static PerturbationField scaled_sine(double omega);    // sin(ωt)/ω on [0, π/ω]
    /// t(L−t)·q(t) on [0, L]; q given by coefficients, constant term first.
    static PerturbationField poly_bump(double length, const std::vector<double>& q);
    /// Arbitrary analytic φ supplied as closures (used for perturbation studies).
    static PerturbationField custom(Eval eval, Deriv deriv, int p_max,
                                    double a, double b, std::string description);
    /// Sampled data: monotone cubic interpolation, finite-difference
    /// derivatives, flagged as approximate.
    static PerturbationField sampled(const std::vector<double>& ts,
                                     const std::vector<double>& values);

    double operator()(double t) const { return eval_(t); }
    double deriv(int order, double t) const;

    int p_max() const { return p_max_; }
    double t_minus() const { return t_minus_; }
    double t_plus() const { return t_plus_; }
    double length() const { return t_plus_ - t_minus_; }
    /// ‖φ‖_Lip = sup |φ'| measured over a dense endpoint-clustered grid.
    double lip_norm() const { return lip_norm_; }
    /// min(|φ'(t_minus)|, |φ'(t_plus)|).
    double slope_inf() const;
    bool approximate_derivs() const { return approximate_derivs_; }
    const std::string& description() const { return description_; }

private:
    Eval eval_;
    Deriv deriv_;
    int p_max_;
    double t_minus_, t_plus_;
    double lip_norm_;
    std::string description_;
    bool approximate_derivs_;
};

/// Measured evidence that a field satisfies the simple-zero conditions.
struct NondegeneracyCertificate {
    double value_at_minus = 0;   // |φ(t_minus)|
    double value_at_plus = 0;    // |φ(t_plus)|
    double slope_at_minus = 0;   // φ'(t_minus)
    double slope_at_plus = 0;    // φ'(t_plus)
    double taylor_ratio = 0;     // sup |φ(t) − φ'(t*)(t−t*)| / (t−t*)² near endpoints
    double tol = 0;
};

/// Probes the field on an endpoint-clustered grid (≥ 64 points) and checks:
/// endpoint values ≤ tol, endpoint slopes ≥ 10·tol in magnitude, no interior
/// zero, and a finite quadratic Taylor-remainder ratio. Throws
/// EndpointMismatch / DegeneratePerturbation / InteriorZero on failure.
NondegeneracyCertificate validate_nondegeneracy(const PerturbationField& field,
                                                double tol);

} // namespace nushift
