#include "ssns/dissipation.hpp"

#include <cmath>

namespace ssns {

Eigen::ArrayXXd multiplier_sq_table(const Grid& g, const DissipationSpec& spec) {
    ModeTables tables = make_mode_tables(g);
    return tables.radius.unaryExpr([&spec](double r) {
        const double m = multiplier_symbol(spec, r);
        return m * m;
    });
}

SpectralField apply_semigroup(const SpectralField& f, const DissipationSpec& spec, double dt) {
    if (dt < 0.0) throw std::invalid_argument("apply_semigroup: dt must be nonnegative");
    Eigen::ArrayXXd factor = (-dt * multiplier_sq_table(f.grid, spec)).exp();
    SpectralField out{f.grid, f.coeffs * factor.cast<Complex>()};
    return out;
}

VectorField apply_semigroup(const VectorField& u, const DissipationSpec& spec, double dt) {
    return {apply_semigroup(u.x, spec, dt), apply_semigroup(u.y, spec, dt)};
}

double dissipation_rate(const VectorField& u, const DissipationSpec& spec) {
    ModeTables tables = make_mode_tables(u.grid());
    Eigen::ArrayXXd msq = multiplier_sq_table(u.grid(), spec);
    return (tables.weight * msq * (u.x.coeffs.abs2() + u.y.coeffs.abs2())).sum();
}

double dissipation_rate_from_vorticity(const SpectralField& omega, const DissipationSpec& spec) {
    ModeTables tables = make_mode_tables(omega.grid);
    Eigen::ArrayXXd msq = multiplier_sq_table(omega.grid, spec);
    Eigen::ArrayXXd inv_ksq = (tables.ksq > 0.0).select(tables.ksq.inverse(), 0.0);
    return (tables.weight * msq * inv_ksq * omega.coeffs.abs2()).sum();
}

}  // namespace ssns
