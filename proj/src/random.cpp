#include "ssns/random.hpp"

#include <cmath>

#include "ssns/ops.hpp"
#include "ssns/transform.hpp"

namespace ssns {

namespace {

// Fills every independently stored mode inside |kx|,|ky| <= kmax with
// envelope(|xi|) * complex gaussian, keeping Hermitian symmetry. The mean
// mode stays zero.
template <typename Envelope>
SpectralField random_field(const Grid& g, std::uint64_t seed, int kmax, Envelope envelope) {
    Rng rng(seed);
    SpectralField f = zero_field(g);
    const int half = g.half();
    kmax = std::min(kmax, half - 1);
    for (int kx = 0; kx <= kmax; ++kx) {
        for (int ky = -kmax; ky <= kmax; ++ky) {
            if (kx == 0 && ky <= 0) continue;  // mirror handled by add_mode_pair
            const double r = std::hypot(static_cast<double>(kx), static_cast<double>(ky));
            const double env = envelope(r);
            if (env == 0.0) continue;
            add_mode_pair(f, kx, ky, env * rng.normal_complex());
        }
    }
    return f;
}

// ||u||_{L2} for the velocity induced by a mean-free vorticity.
double velocity_norm(const SpectralField& omega) {
    ModeTables tables = make_mode_tables(omega.grid);
    Eigen::ArrayXXd inv_ksq = (tables.ksq > 0.0).select(tables.ksq.inverse(), 0.0);
    return std::sqrt((tables.weight * inv_ksq * omega.coeffs.abs2()).sum());
}

}  // namespace

SpectralField taylor_green_vorticity(const Grid& g) {
    SpectralField f = zero_field(g);
    add_mode_pair(f, 1, 1, Complex(0.5, 0.0));
    add_mode_pair(f, 1, -1, Complex(0.5, 0.0));
    return f;
}

SpectralField random_smooth_vorticity(const Grid& g, std::uint64_t seed, double energy,
                                      double kpeak) {
    const int cutoff = dealias_cutoff(g);
    SpectralField f = random_field(g, seed, cutoff, [kpeak](double r) {
        const double s = r / kpeak;
        return r * std::exp(-s * s);
    });
    const double norm = velocity_norm(f);
    if (norm > 0.0) f.coeffs *= energy / norm;
    return f;
}

SpectralField random_shell_vorticity(const Grid& g, const LPBank& bank, int j,
                                     std::uint64_t seed, double energy) {
    SpectralField f = random_shell_scalar(g, bank, j, seed);
    const double norm = velocity_norm(f);
    if (norm > 0.0) f.coeffs *= energy / norm;
    return f;
}

SpectralField random_shell_scalar(const Grid& g, const LPBank& bank, int j, std::uint64_t seed) {
    if (j < 0 || j > bank.jmax) throw std::invalid_argument("random_shell_scalar: shell out of range");
    const double lo = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    SpectralField f = random_field(g, seed, g.half() - 1, [lo, hi](double r) {
        return (r > lo && r < hi) ? 1.0 : 0.0;
    });
    const double norm = l2_norm(f);
    if (norm > 0.0) f.coeffs /= norm;
    return f;
}

VectorField random_divfree_low(const Grid& g, std::uint64_t seed, int kmax, double amplitude) {
    SpectralField psi = random_field(g, seed, kmax, [](double) { return 1.0; });
    // u = grad^perp psi = (-d_y psi, d_x psi)
    VectorField u{derivative(psi, 1), derivative(psi, 0)};
    u.x.coeffs = -u.x.coeffs;
    const double sup = linf_norm(u);
    if (sup > 0.0) {
        u.x.coeffs *= amplitude / sup;
        u.y.coeffs *= amplitude / sup;
    }
    return u;
}

VectorField random_gradient_low(const Grid& g, std::uint64_t seed, int kmax, double amplitude) {
    SpectralField phi = random_field(g, seed, kmax, [](double) { return 1.0; });
    VectorField u{derivative(phi, 0), derivative(phi, 1)};
    const double sup = linf_norm(u);
    if (sup > 0.0) {
        u.x.coeffs *= amplitude / sup;
        u.y.coeffs *= amplitude / sup;
    }
    return u;
}

}  // namespace ssns
