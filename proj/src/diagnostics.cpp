#include "ssns/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "ssns/ops.hpp"

namespace ssns {

namespace {
double shell_weight(int d, int j) { return std::exp2(0.5 * (d + 2) * j); }
}  // namespace

ShellSpectrum shell_spectrum(const VectorField& u, const LPBank& bank) {
    Eigen::ArrayXd norms = shell_l2_norms(u, bank);
    ShellSpectrum s{Eigen::ArrayXd(norms.size()), Grid::d};
    for (int j = 0; j < norms.size(); ++j) s.b[j] = shell_weight(s.d, j) * norms[j];
    return s;
}

ShellSpectrum shell_spectrum(const SpectralField& omega, const LPBank& bank) {
    return shell_spectrum(velocity_from_vorticity(omega), bank);
}

double besov_c(const ShellSpectrum& s) { return s.b.sum(); }

double solve_jku(int k, double gamma, int d) {
    if (k < 1) throw std::invalid_argument("solve_jku: k must be >= 1");
    if (gamma < 0.0) throw std::invalid_argument("solve_jku: gamma must be >= 0");
    if (gamma == 0.0) return 2.0 * k / (d + 2);

    // Root of f(j) = (d+2) j / 2 - gamma log2 j - k, right of f's minimum.
    auto f = [&](double j) { return 0.5 * (d + 2) * j - gamma * std::log2(j) - k; };
    const double ln2 = std::log(2.0);
    double lo = 2.0 * gamma / ((d + 2) * ln2);  // stationary point of f
    double hi = 2.0 * (k + gamma * std::max(1.0, std::log2(4.0 * k))) / (d + 2) + 1.0;
    if (f(lo) > 0.0 || f(hi) < 0.0)
        throw std::invalid_argument("solve_jku: no sign change in bracket (k too small)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
        if (std::abs(f(mid)) <= 1e-10 * std::max(1.0, static_cast<double>(k)) &&
            hi - lo <= 1e-12 * std::max(1.0, hi))
            break;
    }
    return 0.5 * (lo + hi);
}

void ThresholdTracker::observe(double t, double c) {
    if (have_prev_ && t < prev_t_)
        throw std::invalid_argument("ThresholdTracker: samples must be time-ordered");
    while (true) {
        const double level = std::exp2(k_current_ + 1);
        if (c < level) break;
        double t_cross = t;
        if (have_prev_ && prev_c_ < level && c > prev_c_)
            t_cross = prev_t_ + (level - prev_c_) * (t - prev_t_) / (c - prev_c_);
        crossings_.push_back(t_cross);
        ++k_current_;
    }
    prev_t_ = t;
    prev_c_ = c;
    have_prev_ = true;
}

BarrierReport barrier_check(const ShellSpectrum& s, const ThresholdTracker& tracker, double C,
                            const DissipationSpec& spec) {
    if (tracker.k_current() < 1)
        throw std::invalid_argument("barrier_check: tracker has no recorded crossing");
    BarrierReport report;
    report.C = C;
    report.k = tracker.k_current();
    report.j_ku = solve_jku(report.k, spec.gamma, spec.d);
    report.margins.resize(s.shells());
    const double level = std::exp2(report.k);
    for (int j = 0; j < s.shells(); ++j) {
        const double envelope = C * level * std::exp2((report.j_ku - j) / 10.0);
        report.margins[j] = s.b[j] - envelope;
        if (report.margins[j] > 0.0) report.breach = true;
    }
    return report;
}

double barrier_fit_constant(const ShellSpectrum& s, int k, double gamma) {
    const double j_ku = solve_jku(k, gamma, s.d);
    const double level = std::exp2(k);
    double c_fit = 0.0;
    for (int j = 0; j < s.shells(); ++j)
        c_fit = std::max(c_fit, s.b[j] / (level * std::exp2((j_ku - j) / 10.0)));
    return c_fit;
}

ActiveWindow active_window(const ShellSpectrum& s, const ThresholdTracker& tracker) {
    const int k = tracker.k_current();
    if (k < 1) throw std::invalid_argument("active_window: tracker has no recorded crossing");
    const double c = besov_c(s);
    if (c < std::exp2(k)) throw std::invalid_argument("active_window: c(t) below 2^k");

    const double budget = std::exp2(k) / 20.0;
    const int jmax = s.shells() - 1;

    int j_down = -1;
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        acc += s.b[j];
        if (acc > budget) break;
        j_down = j;
    }
    int j_upcut = jmax + 1;
    acc = 0.0;
    for (int j = jmax; j >= 0; --j) {
        acc += s.b[j];
        if (acc > budget) break;
        j_upcut = j;
    }

    ActiveWindow w;
    w.j_down = j_down;
    w.j_upcut = j_upcut;
    w.width = j_upcut - j_down - 1;
    w.empty = w.width <= 0;
    w.log2_k = std::log2(static_cast<double>(std::max(2, k)));
    return w;
}

double dissipation_budget(double accumulator, const VectorField& u, double dt,
                          const DissipationSpec& spec) {
    if (dt < 0.0) throw std::invalid_argument("dissipation_budget: dt must be nonnegative");
    return accumulator + dissipation_rate(u, spec) * dt;
}

double fit_envelope_F(const ShellSpectrum& initial, double mu) {
    double F = 0.0;
    for (int j = 0; j < initial.shells(); ++j)
        F = std::max(F, initial.b[j] * std::exp2(mu * j));
    return F;
}

Eigen::ArrayXd final_barrier_margins(const ShellSpectrum& s, double t, double M, double K,
                                     double F, double mu) {
    Eigen::ArrayXd margins(s.shells());
    const double growth = std::exp(K * M * t);
    for (int j = 0; j < s.shells(); ++j)
        margins[j] = s.b[j] - growth * F * std::exp2(-mu * j);
    return margins;
}

}  // namespace ssns
