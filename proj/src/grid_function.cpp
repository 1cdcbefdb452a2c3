#include "nushift/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nushift/errors.hpp"

namespace nushift {

namespace {

void require_strictly_increasing(const std::vector<double>& xs) {
    if (xs.size() < 2)
        throw OutOfDomain("grid needs at least 2 points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw OutOfDomain("grid must be strictly increasing");
}

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    require_strictly_increasing(xs_);
    if (xs_.size() != ys_.size())
        throw OutOfDomain("xs/ys size mismatch");
    const std::size_t n = xs_.size();
    slope_.assign(n, 0.0);
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = xs_[k + 1] - xs_[k];
        d[k] = (ys_[k + 1] - ys_[k]) / h[k];
    }
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double prod = d[k] * d[k - 1];
        if (prod > 0.0) {
            // Fritsch–Carlson weighted harmonic mean keeps the interpolant
            // monotone on each cell.
            const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
            slope_[k] = prod / (a * d[k] + (1.0 - a) * d[k - 1]);
        } else {
            slope_[k] = 0.0;
        }
    }
}

std::size_t MonotoneCubic::cell(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return 0;
    if (i >= xs_.size()) return xs_.size() - 2;
    return i - 1;
}

double MonotoneCubic::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const std::size_t k = cell(x);
    const double h = xs_[k + 1] - xs_[k];
    const double t = (x - xs_[k]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return ys_[k] * h00 + h * slope_[k] * h10 + ys_[k + 1] * h01 + h * slope_[k + 1] * h11;
}

double MonotoneCubic::deriv(int order, double x) const {
    const std::size_t k = cell(std::clamp(x, xs_.front(), xs_.back()));
    const double h = xs_[k + 1] - xs_[k];
    const double t = std::clamp((x - xs_[k]) / h, 0.0, 1.0);
    // Hermite basis derivatives in the cell-local coordinate.
    const double d00 = 6.0 * t * t - 6.0 * t;
    const double d10 = 3.0 * t * t - 4.0 * t + 1.0;
    const double d01 = -d00;
    const double d11 = 3.0 * t * t - 2.0 * t;
    if (order == 1) {
        return (ys_[k] * d00 + h * slope_[k] * d10 + ys_[k + 1] * d01 +
                h * slope_[k + 1] * d11) / h;
    }
    if (order == 2) {
        const double e00 = 12.0 * t - 6.0;
        const double e10 = 6.0 * t - 4.0;
        const double e01 = -e00;
        const double e11 = 6.0 * t - 2.0;
        return (ys_[k] * e00 + h * slope_[k] * e10 + ys_[k + 1] * e01 +
                h * slope_[k + 1] * e11) / (h * h);
    }
    throw OutOfDomain("MonotoneCubic::deriv supports orders 1 and 2");
}

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    require_strictly_increasing(grid_);
    if (grid_.size() != values_.size())
        throw OutOfDomain("grid/values size mismatch");
    interp_ = MonotoneCubic(grid_, values_);
    finish_init();
}

void GridFunction::finish_init() {
    lip_ = 0;
    sup_ = 0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        sup_ = std::max(sup_, std::abs(values_[i]));
        if (i > 0)
            lip_ = std::max(lip_, std::abs(values_[i] - values_[i - 1]) /
                                      (grid_[i] - grid_[i - 1]));
    }
}

GridFunction GridFunction::from_function(const std::function<double(double)>& f,
                                         double a, double b, int n) {
    if (n < 2) throw OutOfDomain("from_function needs n >= 2");
    std::vector<double> grid(n), values(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i == n - 1) ? b : a + (b - a) * i / (n - 1);
        grid[i] = t;
        values[i] = f(t);
    }
    GridFunction g(std::move(grid), std::move(values));
    g.exact_ = f;
    return g;
}

double GridFunction::operator()(double t) const {
    if (exact_) return exact_(t);
    const double slack = 1e-9 * (grid_.back() - grid_.front());
    if (t < grid_.front() - slack || t > grid_.back() + slack)
        throw OutOfDomain("evaluation outside the grid span");
    return interp_(t);
}

GridFunction GridFunction::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OutOfDomain("cannot open " + path);
    std::vector<double> grid, values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b)) continue;
        try {
            const double t = std::stod(a);
            const double v = std::stod(b);
            grid.push_back(t);
            values.push_back(v);
        } catch (const std::exception&) {
            // header or stray text line
            continue;
        }
    }
    return GridFunction(std::move(grid), std::move(values));
}

void GridFunction::write_csv(std::ostream& out) const {
    out << "t,value\n";
    for (std::size_t i = 0; i < grid_.size(); ++i)
        out << format17(grid_[i]) << ',' << format17(values_[i]) << '\n';
}

void GridFunction::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw OutOfDomain("cannot write " + path);
    write_csv(out);
}

double lipschitz_norm(const GridFunction& f) { return f.lipschitz_norm(); }

} // namespace nushift
