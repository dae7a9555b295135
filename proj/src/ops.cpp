#include "ssns/ops.hpp"

#include <cmath>

#include "ssns/transform.hpp"

namespace ssns {

int dealias_cutoff(const Grid& g, double fraction) {
    return static_cast<int>(std::floor(fraction * g.half()));
}

void dealias(SpectralField& f, int cutoff) {
    const Grid& g = f.grid;
    for (int r = 0; r < g.n; ++r) {
        if (std::abs(g.ky(r)) <= cutoff) continue;
        f.coeffs.row(r).setZero();
    }
    for (int c = cutoff + 1; c < g.spectral_cols(); ++c) f.coeffs.col(c).setZero();
}

void dealias(VectorField& u, int cutoff) {
    dealias(u.x, cutoff);
    dealias(u.y, cutoff);
}

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("derivative: axis must be 0 or 1");
    const Grid& g = f.grid;
    SpectralField out = zero_field(g);
    const Complex i_unit(0.0, 1.0);
    for (int c = 0; c < g.spectral_cols(); ++c) {
        const int kx = g.kx(c);
        if (kx == g.half()) continue;
        for (int r = 0; r < g.n; ++r) {
            const int ky = g.ky(r);
            if (ky == -g.half()) continue;
            const double k = axis == 0 ? kx : ky;
            out.coeffs(r, c) = i_unit * k * f.coeffs(r, c);
        }
    }
    return out;
}

VectorField velocity_from_vorticity(const SpectralField& omega) {
    const Grid& g = omega.grid;
    const double scale = l2_norm(omega);
    if (std::abs(mean_coefficient(omega)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("velocity_from_vorticity: nonzero mean vorticity");

    VectorField u = zero_vector_field(g);
    const Complex i_unit(0.0, 1.0);
    for (int c = 0; c < g.spectral_cols(); ++c) {
        const int kx = g.kx(c);
        if (kx == g.half()) continue;
        for (int r = 0; r < g.n; ++r) {
            const int ky = g.ky(r);
            if (ky == -g.half()) continue;
            const double ksq = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            if (ksq == 0.0) continue;
            const Complex w = omega.coeffs(r, c) / ksq;
            u.x.coeffs(r, c) = i_unit * static_cast<double>(ky) * w;
            u.y.coeffs(r, c) = -i_unit * static_cast<double>(kx) * w;
        }
    }
    return u;
}

SpectralField curl(const VectorField& u) {
    SpectralField dvdx = derivative(u.y, 0);
    SpectralField dudy = derivative(u.x, 1);
    SpectralField out{u.grid(), dvdx.coeffs - dudy.coeffs};
    return out;
}

double divergence_linf(const VectorField& u) {
    const Grid& g = u.grid();
    double worst = 0.0;
    for (int c = 0; c < g.spectral_cols(); ++c)
        for (int r = 0; r < g.n; ++r) {
            Complex div = static_cast<double>(g.kx(c)) * u.x.coeffs(r, c) +
                          static_cast<double>(g.ky(r)) * u.y.coeffs(r, c);
            worst = std::max(worst, std::abs(div));
        }
    return worst;
}

namespace {

// Core of advect(); assumes inputs already truncated.
SpectralField advect_truncated(const VectorField& u, const SpectralField& f, int cutoff) {
    Eigen::ArrayXXd ux = to_physical(u.x);
    Eigen::ArrayXXd uy = to_physical(u.y);
    Eigen::ArrayXXd fx = to_physical(derivative(f, 0));
    Eigen::ArrayXXd fy = to_physical(derivative(f, 1));
    SpectralField out = to_spectral(f.grid, (ux * fx + uy * fy).eval());
    dealias(out, cutoff);
    set_mean_zero(out);
    return out;
}

}  // namespace

SpectralField advect(const VectorField& u, const SpectralField& f) {
    if (!(u.grid() == f.grid)) throw std::invalid_argument("advect: grid mismatch");
    const int cutoff = dealias_cutoff(f.grid);
    VectorField uc = u;
    SpectralField fc = f;
    dealias(uc, cutoff);
    dealias(fc, cutoff);
    return advect_truncated(uc, fc, cutoff);
}

SpectralField nonlinear_term(const SpectralField& omega) {
    const int cutoff = dealias_cutoff(omega.grid);
    SpectralField wc = omega;
    dealias(wc, cutoff);
    return advect_truncated(velocity_from_vorticity(wc), wc, cutoff);
}

}  // namespace ssns
