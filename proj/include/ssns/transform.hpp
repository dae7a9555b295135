#pragma once

#include <Eigen/Core>

#include "ssns/field.hpp"

namespace ssns {

// Physical-space samples f(i*dx, j*dx) are stored as phys(i, j): the first
// index walks x, the second walks y. Transform plans hold internal scratch
// buffers; the free functions below use one plan per thread and are safe to
// call concurrently from different threads.

/// Synthesis (unscaled inverse DFT): spectral coefficients -> grid samples.
Eigen::ArrayXXd to_physical(const SpectralField& f);

/// Analysis (forward DFT scaled by 1/n^2): grid samples -> coefficients.
SpectralField to_spectral(const Grid& g, const Eigen::ArrayXXd& phys);

/// Sup norm of the physical-space field.
double linf_norm(const SpectralField& f);

/// Sup norm of the pointwise Euclidean magnitude of a vector field.
double linf_norm(const VectorField& u);

}  // namespace ssns
