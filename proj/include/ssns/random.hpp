#pragma once

#include <cstdint>
#include <random>

#include "ssns/field.hpp"
#include "ssns/lp.hpp"

namespace ssns {

/// Seeded generator with an explicit Box-Muller normal, so sampled fields
/// are reproducible bit-for-bit across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return mag * std::cos(kTwoPi * u2);
    }

    Complex normal_complex() { return {normal(), normal()}; }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// omega_0 = 2 cos(x) cos(y): the Taylor-Green eigenstructure whose
/// advection term vanishes identically.
SpectralField taylor_green_vorticity(const Grid& g);

/// Mean-free random vorticity with smooth spectral envelope
/// r exp(-(r/kpeak)^2), band-limited under the dealiasing cutoff and scaled
/// so the associated velocity has L2 norm `energy`.
SpectralField random_smooth_vorticity(const Grid& g, std::uint64_t seed, double energy,
                                      double kpeak);

/// Random vorticity supported on the annulus of Littlewood-Paley shell j,
/// velocity scaled to L2 norm `energy`.
SpectralField random_shell_vorticity(const Grid& g, const LPBank& bank, int j,
                                     std::uint64_t seed, double energy);

/// Random scalar field with coefficients on shell j's annulus, unit L2 norm.
SpectralField random_shell_scalar(const Grid& g, const LPBank& bank, int j, std::uint64_t seed);

/// Divergence-free low-frequency velocity u = grad^perp psi with psi random
/// on modes |xi| <= kmax, scaled to sup norm roughly `amplitude`.
VectorField random_divfree_low(const Grid& g, std::uint64_t seed, int kmax, double amplitude);

/// Gradient field u = grad phi (curl-free, not divergence-free): the
/// negative control for the skew-adjointness identity.
VectorField random_gradient_low(const Grid& g, std::uint64_t seed, int kmax, double amplitude);

}  // namespace ssns
