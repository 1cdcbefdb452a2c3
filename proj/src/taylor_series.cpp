#include "nushift/taylor_series.hpp"

#include <cmath>
#include <cstddef>

#include "nushift/errors.hpp"

namespace nushift::series {

Series mul(std::span<const double> a, std::span<const double> b, int p) {
    Series out(static_cast<std::size_t>(p) + 1, 0.0);
    const std::size_t na = std::min(a.size(), out.size());
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0.0) continue;
        const std::size_t nb = std::min(b.size(), out.size() - i);
        for (std::size_t j = 0; j < nb; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

Series compose(std::span<const double> outer, std::span<const double> inner,
               int p) {
    if (!inner.empty() && inner[0] != 0.0)
        throw OutOfDomain("series compose requires inner constant term 0");
    // Horner in the inner series.
    Series acc(static_cast<std::size_t>(p) + 1, 0.0);
    for (std::size_t m = outer.size(); m-- > 0;) {
        acc = mul(acc, inner, p);
        acc[0] += outer[m];
    }
    return acc;
}

Series revert(std::span<const double> c, int p) {
    if (c.size() < 2 || c[0] != 0.0 || c[1] == 0.0)
        throw OutOfDomain("series revert requires c[0]=0 and c[1]!=0");
    // Solve coefficientwise: [h^n] Σ_{m=1}^{n} d_m c(h)^m = δ_{n,1}.
    Series d(static_cast<std::size_t>(p) + 1, 0.0);
    d[1] = 1.0 / c[1];
    Series c_pow(c.begin(), c.end());
    c_pow.resize(static_cast<std::size_t>(p) + 1, 0.0);
    std::vector<Series> powers;  // powers[m-1] = c^m truncated
    powers.push_back(c_pow);
    for (int m = 2; m <= p; ++m)
        powers.push_back(mul(powers.back(), c_pow, p));
    double c1n = c[1];
    for (int n = 2; n <= p; ++n) {
        c1n *= c[1];
        double s = 0.0;
        for (int m = 1; m < n; ++m)
            s += d[static_cast<std::size_t>(m)]
                 * powers[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(n)];
        d[static_cast<std::size_t>(n)] = -s / c1n;
    }
    return d;
}

} // namespace nushift::series
