#pragma once

#include <Eigen/Core>

#include "ssns/field.hpp"

namespace ssns {

// The slightly supercritical dissipation operator D^2, where D is the
// Fourier multiplier with symbol
//
//     m(r) = r^{(d+2)/4} / (log(2 + r))^gamma     (natural log).
//
// Solutions stay globally smooth for gamma <= 1/4; larger gamma weakens the
// dissipation below what the regularity argument can absorb.
struct DissipationSpec {
    double gamma = 0.25;
    int d = 2;

    bool theorem_regime() const { return gamma <= 0.25; }
};

inline double multiplier_symbol(const DissipationSpec& spec, double r) {
    if (r == 0.0) return 0.0;
    const double p = 0.25 * (spec.d + 2);
    return std::pow(r, p) / std::pow(std::log(2.0 + r), spec.gamma);
}

/// m(|xi|)^2 tabulated on the stored coefficient layout.
Eigen::ArrayXXd multiplier_sq_table(const Grid& g, const DissipationSpec& spec);

/// Exact semigroup of -D^2: each coefficient is multiplied by
/// exp(-m(|xi|)^2 dt). Throws on dt < 0.
SpectralField apply_semigroup(const SpectralField& f, const DissipationSpec& spec, double dt);
VectorField apply_semigroup(const VectorField& u, const DissipationSpec& spec, double dt);

/// <Du, Du> = sum_xi m(|xi|)^2 |uhat(xi)|^2.
double dissipation_rate(const VectorField& u, const DissipationSpec& spec);

/// Same quantity evaluated from the vorticity of a 2-d divergence-free
/// field: |uhat|^2 = |omegahat|^2 / |xi|^2.
double dissipation_rate_from_vorticity(const SpectralField& omega, const DissipationSpec& spec);

}  // namespace ssns
