#pragma once

#include "ssns/field.hpp"

namespace ssns {

/// Largest wavenumber magnitude kept by the 2/3-rule: floor(n/3).
int dealias_cutoff(const Grid& g, double fraction = 2.0 / 3.0);

/// Zeroes every mode with |kx| > cutoff or |ky| > cutoff.
void dealias(SpectralField& f, int cutoff);
void dealias(VectorField& u, int cutoff);

/// Spectral derivative d/dx_axis (axis 0 = x, 1 = y). Nyquist modes are
/// zeroed; differentiating them has no consistent sign on a real grid.
SpectralField derivative(const SpectralField& f, int axis);

/// Biot-Savart on the torus: uhat(xi) = i (xi_2, -xi_1) omegahat(xi) / |xi|^2,
/// the unique mean-free divergence-free field with curl u = omega
/// (i (xi_1 uhat_2 - xi_2 uhat_1) = omegahat). Requires mean-free vorticity.
VectorField velocity_from_vorticity(const SpectralField& omega);

/// Scalar curl d(u_y)/dx - d(u_x)/dy.
SpectralField curl(const VectorField& u);

/// Maximum of |xi . uhat(xi)| over all modes (0 for divergence-free fields).
double divergence_linf(const VectorField& u);

/// u . grad f by dealiased collocation: both inputs are truncated by the
/// 2/3 rule, the product is formed pointwise in physical space, and the
/// result is truncated again and returned mean-free. For band-limited
/// inputs the retained modes are alias-free.
SpectralField advect(const VectorField& u, const SpectralField& f);

/// The advection term u . grad omega of the 2-d vorticity equation, with
/// u reconstructed from omega. Mean-free, dealiased output.
SpectralField nonlinear_term(const SpectralField& omega);

}  // namespace ssns
