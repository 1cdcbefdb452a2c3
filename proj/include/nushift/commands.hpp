#pragma once

#include <iosfwd>
#include <vector>

#include "nushift/run_config.hpp"

namespace nushift {

// Exit-code contract: 0 success, 2 config/validation failure,
// 3 solvability failure, 4 numerical non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolvability = 3;
inline constexpr int kExitNumerical = 4;

/// Gram matrix G_{jk} = ∫₀^π e_j e_k Φ' dt of the shifted sine basis
/// e_k(t) = sin(k(t + α sin t)); the change of variables u = t + α sin t
/// reduces it to classical sine orthogonality, so G = (π/2)·I.
struct GramSummary {
    double max_offdiag = 0;
    double max_diag_deviation = 0;  // max |G_kk − π/2|
};
GramSummary gram_isometry(double alpha, int modes, double tol,
                          std::vector<std::vector<double>>* matrix = nullptr);

int cmd_constants(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_kernel(const RunConfig& cfg, std::ostream& log);
int cmd_orbit(const RunConfig& cfg, std::ostream& log);
int cmd_jets(const RunConfig& cfg, std::ostream& log);
int cmd_gram(const RunConfig& cfg, std::ostream& log);
int cmd_roundtrip(const RunConfig& cfg, std::ostream& log);

} // namespace nushift
