#include "ssns/transform.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace ssns {

namespace {

// kissfft-backed plans, cached per thread. Eigen::FFT caches per-size plans
// internally, so one object serves every grid size this thread touches.
struct Plan {
    Eigen::FFT<double> fft;
    std::vector<double> real_buf;
    std::vector<Complex> cplx_in, cplx_out;

    Plan() {
        fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
        fft.SetFlag(Eigen::FFT<double>::Unscaled);
    }
};

Plan& local_plan() {
    thread_local Plan plan;
    return plan;
}

}  // namespace

SpectralField to_spectral(const Grid& g, const Eigen::ArrayXXd& phys) {
    validate(g);
    if (phys.rows() != g.n || phys.cols() != g.n)
        throw std::invalid_argument("to_spectral: sample array does not match grid");
    Plan& p = local_plan();
    const int n = g.n, cols = g.spectral_cols();

    // r2c along x for each y sample column.
    Eigen::ArrayXXcd half(cols, n);
    p.real_buf.resize(n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) p.real_buf[ix] = phys(ix, iy);
        p.fft.fwd(p.cplx_out, p.real_buf);
        for (int c = 0; c < cols; ++c) half(c, iy) = p.cplx_out[c];
    }

    // c2c along y for each retained kx.
    SpectralField f{g, Eigen::ArrayXXcd(n, cols)};
    p.cplx_in.resize(n);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (int c = 0; c < cols; ++c) {
        for (int iy = 0; iy < n; ++iy) p.cplx_in[iy] = half(c, iy);
        p.fft.fwd(p.cplx_out, p.cplx_in);
        for (int r = 0; r < n; ++r) f.coeffs(r, c) = scale * p.cplx_out[r];
    }
    return f;
}

Eigen::ArrayXXd to_physical(const SpectralField& f) {
    const Grid& g = f.grid;
    validate(g);
    Plan& p = local_plan();
    const int n = g.n, cols = g.spectral_cols();

    // c2c inverse along y.
    Eigen::ArrayXXcd half(cols, n);
    p.cplx_in.resize(n);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < n; ++r) p.cplx_in[r] = f.coeffs(r, c);
        p.fft.inv(p.cplx_out, p.cplx_in);
        for (int iy = 0; iy < n; ++iy) half(c, iy) = p.cplx_out[iy];
    }

    // c2r inverse along x.
    Eigen::ArrayXXd phys(n, n);
    for (int iy = 0; iy < n; ++iy) {
        p.cplx_in.resize(cols);
        for (int c = 0; c < cols; ++c) p.cplx_in[c] = half(c, iy);
        p.fft.inv(p.real_buf, p.cplx_in, n);
        for (int ix = 0; ix < n; ++ix) phys(ix, iy) = p.real_buf[ix];
    }
    return phys;
}

double linf_norm(const SpectralField& f) { return to_physical(f).abs().maxCoeff(); }

double linf_norm(const VectorField& u) {
    Eigen::ArrayXXd ux = to_physical(u.x);
    Eigen::ArrayXXd uy = to_physical(u.y);
    return (ux.square() + uy.square()).sqrt().maxCoeff();
}

}  // namespace ssns
