#pragma once

#include <vector>

#include <Eigen/Core>

#include "ssns/field.hpp"

namespace ssns {

// Littlewood-Paley decomposition. The cutoff profile is fixed once and for
// all so every fitted constant in the project is reproducible:
//
//   phi(x) = 1                          for x <= 1,
//   phi(x) = 0                          for x >= 2,
//   phi(x) = h(2-x) / (h(2-x) + h(x-1)) on (1, 2),  h(t) = exp(-1/t) (t > 0).
//
// Shell symbols: psi_0(r) = phi(r), psi_j(r) = phi(r/2^j) - phi(r/2^{j-1})
// for j >= 1, so psi_j is supported on the open annulus 2^{j-1} < r < 2^{j+1}
// and the symbols telescope to a partition of unity for r <= 2^jmax.
// Shells with negative index are identically zero.

/// The smooth cutoff profile.
double lp_phi(double x);

/// Shell symbol psi_j evaluated at radius r (any j; negative j gives 0).
double lp_psi(int j, double r);

/// Per-grid tabulation of the shell symbols on the stored coefficient layout.
struct LPBank {
    Grid grid;
    int jmax = 0;                          // shells 0..jmax, 2^jmax = n/2
    std::vector<Eigen::ArrayXXd> symbols;  // symbols[j](row, col) = psi_j(|xi|)

    int shells() const { return jmax + 1; }
    const Eigen::ArrayXXd& symbol(int j) const { return symbols.at(j); }
};

/// Builds the bank with jmax = log2(n/2). Throws if the grid cannot host at
/// least three shells.
LPBank make_lp_bank(const Grid& g);

/// P_j f: coefficients multiplied pointwise by psi_j.
SpectralField project_shell(const SpectralField& f, int j, const LPBank& bank);
VectorField project_shell(const VectorField& u, int j, const LPBank& bank);

/// ||P_j f||_{L2} for every shell, by Parseval in spectral space.
Eigen::ArrayXd shell_l2_norms(const SpectralField& f, const LPBank& bank);
Eigen::ArrayXd shell_l2_norms(const VectorField& u, const LPBank& bank);

}  // namespace ssns
