#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nushift {

/// Monotonicity-preserving piecewise-cubic Hermite interpolant
/// (Fritsch–Carlson limited slopes). Exact on the nodes, no overshoot
/// between them, C¹ with piecewise-defined second derivative.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    double deriv(int order, double x) const;  // order 1 or 2, piecewise

    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

private:
    std::size_t cell(double x) const;
    std::vector<double> xs_, ys_, slope_;
};

/// A scalar function sampled on a strictly increasing grid. Off-grid values
/// come from the exact evaluator when one is attached (built-in generators)
/// and from monotone cubic interpolation otherwise (CSV input).
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> grid, std::vector<double> values);

    static GridFunction from_function(const std::function<double(double)>& f,
                                      double a, double b, int n);
    static GridFunction read_csv(const std::string& path);
    void write_csv(const std::string& path) const;
    void write_csv(std::ostream& out) const;

    double operator()(double t) const;
    double value_at(std::size_t i) const { return values_[i]; }
    double node(std::size_t i) const { return grid_[i]; }
    std::size_t size() const { return grid_.size(); }
    double t_front() const { return grid_.front(); }
    double t_back() const { return grid_.back(); }
    std::span<const double> grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    bool has_exact_evaluator() const { return static_cast<bool>(exact_); }

    /// Max divided difference over adjacent grid pairs. Equals the Lipschitz
    /// constant of the piecewise-linear interpolant; a lower estimate for
    /// smooth functions sampled on the grid.
    double lipschitz_norm() const { return lip_; }
    double sup_norm() const { return sup_; }

private:
    std::vector<double> grid_, values_;
    MonotoneCubic interp_;
    std::function<double(double)> exact_;
    double lip_ = 0, sup_ = 0;

    void finish_init();
};

/// Spec'd free-function spelling of the Lipschitz estimator.
double lipschitz_norm(const GridFunction& f);

} // namespace nushift
