#include "ssns/lp.hpp"

#include <cmath>

namespace ssns {

namespace {
double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double lp_phi(double x) {
    if (x <= 1.0) return 1.0;
    if (x >= 2.0) return 0.0;
    const double a = bump(2.0 - x);
    const double b = bump(x - 1.0);
    return a / (a + b);
}

double lp_psi(int j, double r) {
    if (j < 0) return 0.0;
    if (j == 0) return lp_phi(r);
    const double scale = std::ldexp(1.0, -j);  // 2^{-j}
    return lp_phi(r * scale) - lp_phi(r * scale * 2.0);
}

LPBank make_lp_bank(const Grid& g) {
    validate(g);
    int jmax = 0;
    while ((1 << (jmax + 1)) <= g.half()) ++jmax;
    // n is a power of two, so 2^jmax == n/2 exactly.
    if (jmax < 2) throw std::invalid_argument("make_lp_bank: grid too small to host 3 shells");

    ModeTables tables = make_mode_tables(g);
    LPBank bank{g, jmax, {}};
    bank.symbols.reserve(jmax + 1);
    for (int j = 0; j <= jmax; ++j)
        bank.symbols.push_back(tables.radius.unaryExpr([j](double r) { return lp_psi(j, r); }));
    return bank;
}

SpectralField project_shell(const SpectralField& f, int j, const LPBank& bank) {
    if (j < 0 || j > bank.jmax) throw std::invalid_argument("project_shell: shell index out of range");
    if (!(f.grid == bank.grid)) throw std::invalid_argument("project_shell: grid mismatch");
    SpectralField out{f.grid, f.coeffs * bank.symbol(j).cast<Complex>()};
    return out;
}

VectorField project_shell(const VectorField& u, int j, const LPBank& bank) {
    return {project_shell(u.x, j, bank), project_shell(u.y, j, bank)};
}

Eigen::ArrayXd shell_l2_norms(const SpectralField& f, const LPBank& bank) {
    if (!(f.grid == bank.grid)) throw std::invalid_argument("shell_l2_norms: grid mismatch");
    const Grid& g = f.grid;
    const int nyq = g.half();
    Eigen::ArrayXd norms(bank.shells());
    Eigen::ArrayXXd energy = f.coeffs.abs2();
    for (int c = 1; c < nyq; ++c) energy.col(c) *= 2.0;
    for (int j = 0; j <= bank.jmax; ++j)
        norms[j] = std::sqrt((bank.symbol(j).square() * energy).sum());
    return norms;
}

Eigen::ArrayXd shell_l2_norms(const VectorField& u, const LPBank& bank) {
    Eigen::ArrayXd nx = shell_l2_norms(u.x, bank);
    Eigen::ArrayXd ny = shell_l2_norms(u.y, bank);
    return (nx.square() + ny.square()).sqrt();
}

}  // namespace ssns
