#pragma once

#include <complex>

#include <Eigen/Core>

#include "ssns/grid.hpp"

namespace ssns {

using Complex = std::complex<double>;

// Spectral representation of a real scalar field f on the torus with the
// synthesis convention
//
//     f(x) = sum_xi fhat(xi) e^{i xi . x},
//
// so a unit coefficient pair at +-xi is a cosine of amplitude 2 regardless
// of grid size; the 1/n^2 DFT normalization is carried entirely by the
// analysis (forward) transform. Storage is real-to-complex: rows index the
// signed y-wavenumber (row n/2 is the Nyquist pair), columns index
// kx = 0..n/2, and modes with kx < 0 are implied by Hermitian symmetry
// fhat(-xi) = conj(fhat(xi)). L2 norms are taken with the normalized Haar
// measure on the torus, so Parseval reads ||f||^2 = sum_xi |fhat(xi)|^2.
struct SpectralField {
    Grid grid;
    Eigen::ArrayXXcd coeffs;  // (n rows) x (n/2+1 cols)
};

/// Divergence-free velocity fields and other rank-1 objects.
struct VectorField {
    SpectralField x, y;
    const Grid& grid() const { return x.grid; }
};

inline SpectralField zero_field(const Grid& g) {
    validate(g);
    SpectralField f{g, Eigen::ArrayXXcd::Zero(g.n, g.spectral_cols())};
    return f;
}

inline VectorField zero_vector_field(const Grid& g) {
    return {zero_field(g), zero_field(g)};
}

inline bool all_finite(const SpectralField& f) {
    return f.coeffs.real().allFinite() && f.coeffs.imag().allFinite();
}

/// Column multiplicity in the full spectrum: interior columns stand for a
/// +-kx pair, the kx = 0 and Nyquist columns for themselves only.
inline double column_weight(const Grid& g, int col) {
    return (col == 0 || col == g.half()) ? 1.0 : 2.0;
}

inline double l2_norm_sq(const SpectralField& f) {
    const int nyq = f.grid.half();
    double s = f.coeffs.col(0).abs2().sum() + f.coeffs.col(nyq).abs2().sum();
    for (int c = 1; c < nyq; ++c) s += 2.0 * f.coeffs.col(c).abs2().sum();
    return s;
}

inline double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

inline double l2_norm_sq(const VectorField& u) { return l2_norm_sq(u.x) + l2_norm_sq(u.y); }
inline double l2_norm(const VectorField& u) { return std::sqrt(l2_norm_sq(u)); }

/// Real L2 inner product <f, g> on the normalized torus.
inline double inner(const SpectralField& f, const SpectralField& g) {
    const int nyq = f.grid.half();
    auto col_dot = [&](int c) {
        return (f.coeffs.col(c) * g.coeffs.col(c).conjugate()).real().sum();
    };
    double s = col_dot(0) + col_dot(nyq);
    for (int c = 1; c < nyq; ++c) s += 2.0 * col_dot(c);
    return s;
}

inline Complex mean_coefficient(const SpectralField& f) { return f.coeffs(0, 0); }

inline void set_mean_zero(SpectralField& f) { f.coeffs(0, 0) = Complex(0.0, 0.0); }

/// Coefficient at an arbitrary signed wavevector (kx may be negative, in
/// which case the Hermitian mirror of the stored entry is returned).
inline Complex coefficient(const SpectralField& f, int kx, int ky) {
    const Grid& g = f.grid;
    if (kx >= 0) return f.coeffs(g.row_of_ky(ky), kx);
    return std::conj(f.coeffs(g.row_of_ky(-ky), -kx));
}

/// Adds c e^{i xi . x} + conj(c) e^{-i xi . x} for xi = (kx, ky), keeping the
/// field real. Callers pass the representative with kx > 0, or kx = 0 and
/// ky > 0; |k| must stay strictly below n/2.
inline void add_mode_pair(SpectralField& f, int kx, int ky, Complex c) {
    const Grid& g = f.grid;
    if (kx < 0 || (kx == 0 && ky <= 0))
        throw std::invalid_argument("add_mode_pair: pass the kx > 0 (or kx = 0, ky > 0) representative");
    if (kx >= g.half() || std::abs(ky) >= g.half())
        throw std::invalid_argument("add_mode_pair: wavevector outside [-n/2, n/2) interior");
    f.coeffs(g.row_of_ky(ky), kx) += c;
    if (kx == 0) f.coeffs(g.row_of_ky(-ky), 0) += std::conj(c);
}

/// Worst violation of fhat(-xi) = conj(fhat(xi)) over the self-conjugate
/// columns (the interior columns are symmetric by construction).
inline double hermitian_residual(const SpectralField& f) {
    const Grid& g = f.grid;
    double worst = std::abs(f.coeffs(0, 0).imag());
    worst = std::max(worst, std::abs(f.coeffs(g.row_of_ky(-g.half()), 0).imag()));
    for (int col : {0, g.half()}) {
        worst = std::max(worst, std::abs(f.coeffs(0, col).imag()));
        for (int r = 1; r < g.half(); ++r) {
            Complex delta = f.coeffs(r, col) - std::conj(f.coeffs(g.n - r, col));
            worst = std::max(worst, std::abs(delta));
        }
    }
    return worst;
}

inline void enforce_hermitian(SpectralField& f) {
    const Grid& g = f.grid;
    for (int col : {0, g.half()}) {
        f.coeffs(0, col) = Complex(f.coeffs(0, col).real(), 0.0);
        f.coeffs(g.half(), col) = Complex(f.coeffs(g.half(), col).real(), 0.0);
        for (int r = 1; r < g.half(); ++r) {
            Complex avg = 0.5 * (f.coeffs(r, col) + std::conj(f.coeffs(g.n - r, col)));
            f.coeffs(r, col) = avg;
            f.coeffs(g.n - r, col) = std::conj(avg);
        }
    }
}

}  // namespace ssns
