#include "nushift/quadrature.hpp"

#include <cmath>

#include "nushift/errors.hpp"

namespace nushift {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth <= 0)
        return left + right + err / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_depth) {
    if (!(b > a)) throw OutOfDomain("quadrature needs a < b");
    // Seed with 8 panels so oscillatory integrands are resolved before the
    // error estimate is trusted.
    double total = 0;
    const int panels = 8;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + (b - a) * i / panels;
        const double x1 = a + (b - a) * (i + 1) / panels;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        total += adapt(f, x0, x1, f0, fm, f1, simpson(f0, fm, f1, x1 - x0),
                       tol / panels, max_depth);
    }
    return total;
}

} // namespace nushift
