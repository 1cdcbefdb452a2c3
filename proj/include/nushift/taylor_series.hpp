#pragma once

#include <span>
#include <vector>

namespace nushift::series {

/// Truncated power series: coefficients c[0..p] of Σ c_m h^m. All
/// operations truncate at the requested degree.
using Series = std::vector<double>;

/// Product truncated at degree p.
Series mul(std::span<const double> a, std::span<const double> b, int p);

/// outer(inner(h)) truncated at degree p; inner's constant term must be 0
/// (callers shift the expansion point into outer's coefficients).
Series compose(std::span<const double> outer, std::span<const double> inner,
               int p);

/// Compositional inverse of c (c[0] = 0, c[1] ≠ 0): returns d with
/// d(c(h)) = h through degree p.
Series revert(std::span<const double> c, int p);

} // namespace nushift::series
