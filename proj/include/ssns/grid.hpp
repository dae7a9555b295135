#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace ssns {

inline constexpr double kTwoPi = 6.28318530717958647692528676656;

/// Uniform periodic grid on the 2-torus [0, 2pi)^2 with n points per
/// dimension. Integer wavenumbers live in [-n/2, n/2).
struct Grid {
    int n = 0;

    static constexpr int d = 2;
    static constexpr double length = kTwoPi;

    double dx() const { return length / n; }
    int half() const { return n / 2; }

    /// Number of stored spectral columns in the real-to-complex layout.
    int spectral_cols() const { return n / 2 + 1; }

    /// Signed y-wavenumber for a stored row index in [0, n).
    int ky(int row) const { return row < n / 2 ? row : row - n; }
    /// x-wavenumber for a stored column index in [0, n/2]. The last column
    /// carries the Nyquist pair |kx| = n/2.
    int kx(int col) const { return col; }

    /// Stored row index for a signed y-wavenumber.
    int row_of_ky(int k) const { return k >= 0 ? k : k + n; }

    bool operator==(const Grid&) const = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void validate(const Grid& g) {
    if (g.n < 16 || !is_power_of_two(g.n))
        throw std::invalid_argument("grid.n must be a power of two >= 16");
}

/// Per-mode lookup tables on the stored (n x n/2+1) coefficient layout.
struct ModeTables {
    Eigen::ArrayXXd kx;      // x-wavenumber (>= 0, Nyquist column = n/2)
    Eigen::ArrayXXd ky;      // signed y-wavenumber
    Eigen::ArrayXXd ksq;     // |xi|^2
    Eigen::ArrayXXd radius;  // |xi|
    Eigen::ArrayXXd weight;  // multiplicity of the stored entry in the full spectrum
};

inline ModeTables make_mode_tables(const Grid& g) {
    const int rows = g.n, cols = g.spectral_cols();
    ModeTables t;
    t.kx.resize(rows, cols);
    t.ky.resize(rows, cols);
    for (int c = 0; c < cols; ++c)
        t.kx.col(c).setConstant(static_cast<double>(g.kx(c)));
    for (int r = 0; r < rows; ++r)
        t.ky.row(r).setConstant(static_cast<double>(g.ky(r)));
    t.ksq = t.kx.square() + t.ky.square();
    t.radius = t.ksq.sqrt();
    t.weight.resize(rows, cols);
    t.weight.setConstant(2.0);
    t.weight.col(0).setConstant(1.0);
    t.weight.col(g.half()).setConstant(1.0);
    return t;
}

}  // namespace ssns
