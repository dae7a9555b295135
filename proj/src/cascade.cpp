#include "ssns/cascade.hpp"

#include <cmath>
#include <stdexcept>

#include "ssns/diagnostics.hpp"

namespace ssns {

void validate(const CascadeParams& params) {
    if (params.coupling < 0.0) throw std::invalid_argument("cascade.c must be nonnegative");
    if (params.gamma < 0.0) throw std::invalid_argument("dissipation.gamma must be nonnegative");
    if (params.d < 2) throw std::invalid_argument("cascade.d must be >= 2");
    if (params.jmax < 10) throw std::invalid_argument("cascade.jmax must be >= 10");
    if (!(params.atol > 0.0 && params.rtol > 0.0))
        throw std::invalid_argument("cascade tolerances must be positive");
}

double shell_dissipation_factor(const CascadeParams& params, int j) {
    const double growth = std::exp2(0.5 * (params.d + 2) * j);
    switch (params.diss_form) {
        case DissForm::paper_j:
            return growth / std::pow(1.0 + j, 2.0 * params.gamma);
        case DissForm::symbol_log:
            return growth / std::pow(std::log(2.0 + std::exp2(j)), 2.0 * params.gamma);
    }
    return growth;
}

Eigen::ArrayXd cascade_rhs(const Eigen::ArrayXd& b, const CascadeParams& params) {
    const int shells = static_cast<int>(b.size());
    const int w = params.alpha_width;
    auto at = [&](int j) { return (j >= 0 && j < shells) ? b[j] : 0.0; };

    // Prefix sums for the low-frequency factor sum_{k <= j+5}.
    Eigen::ArrayXd prefix(shells + 1);
    prefix[0] = 0.0;
    for (int j = 0; j < shells; ++j) prefix[j + 1] = prefix[j] + b[j];

    Eigen::ArrayXd rhs(shells);
    for (int j = 0; j < shells; ++j) {
        const double low_sum = prefix[std::min(shells, j + w + 1)];
        double near_sum = 0.0;
        for (int a = -w; a <= w; ++a) near_sum += at(j + a);

        double high_sum = 0.0;
        for (int k = j; k < shells; ++k) {
            double pair_sum = 0.0;
            for (int a = -w; a <= w; ++a) pair_sum += b[k] * at(k + a);
            high_sum += std::exp2(static_cast<double>(params.d) * (j - k)) * pair_sum;
        }

        rhs[j] = params.coupling * (low_sum * near_sum + high_sum) -
                 shell_dissipation_factor(params, j) * b[j];
    }
    return rhs;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

double budget_rate(const Eigen::ArrayXd& b, const CascadeParams& params) {
    double s = 0.0;
    for (int j = 0; j < b.size(); ++j) {
        const double decay = std::exp2(-0.5 * (params.d + 2) * j);
        const double denom = params.diss_form == DissForm::paper_j
                                 ? std::pow(1.0 + j, 2.0 * params.gamma)
                                 : std::pow(std::log(2.0 + std::exp2(j)), 2.0 * params.gamma);
        s += decay * b[j] * b[j] / denom;
    }
    return s;
}

}  // namespace

CascadeTrajectory integrate_cascade(CascadeState state, const CascadeParams& params,
                                    double t_end, double cadence) {
    validate(params);
    if (state.b.size() != params.jmax + 1)
        throw std::invalid_argument("integrate_cascade: state size must be jmax + 1");
    if ((state.b < 0.0).any())
        throw std::invalid_argument("integrate_cascade: negative initial shell");
    if (cadence <= 0.0) throw std::invalid_argument("integrate_cascade: cadence must be positive");

    CascadeTrajectory traj;
    auto record = [&](double t, const Eigen::ArrayXd& b) {
        traj.samples.push_back({t, b});
        traj.sup_c = std::max(traj.sup_c, b.sum());
    };
    record(state.t, state.b);

    double dt = 1e-6;
    double next_sample = state.t + cadence;
    const double dt_floor = 1e-14;

    while (state.t < t_end) {
        dt = std::min(dt, t_end - state.t);

        const Eigen::ArrayXd& y = state.b;
        Eigen::ArrayXd k1 = cascade_rhs(y, params);
        Eigen::ArrayXd k2 = cascade_rhs(y + dt * kA21 * k1, params);
        Eigen::ArrayXd k3 = cascade_rhs(y + dt * (kA31 * k1 + kA32 * k2), params);
        Eigen::ArrayXd k4 = cascade_rhs(y + dt * (kA41 * k1 + kA42 * k2 + kA43 * k3), params);
        Eigen::ArrayXd k5 =
            cascade_rhs(y + dt * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4), params);
        Eigen::ArrayXd k6 = cascade_rhs(
            y + dt * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5), params);
        Eigen::ArrayXd ynew =
            y + dt * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        Eigen::ArrayXd k7 = cascade_rhs(ynew, params);
        Eigen::ArrayXd err_vec =
            dt * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

        double err = 0.0;
        int worst_shell = 0;
        for (int j = 0; j <= params.jmax; ++j) {
            const double scale =
                params.atol + params.rtol * std::max(std::abs(y[j]), std::abs(ynew[j]));
            const double e = std::abs(err_vec[j]) / scale;
            if (e > err) {
                err = e;
                worst_shell = j;
            }
        }

        if (!std::isfinite(err) || err > 1.0) {
            const double shrink = std::isfinite(err)
                                      ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                                      : 0.2;
            dt *= shrink;
            if (dt < dt_floor) {
                traj.blowup_suspect = true;
                traj.offending_shell = worst_shell;
                break;
            }
            continue;
        }

        // Accepted: budget via the same stage quadrature (5th-order weights).
        traj.total_dissipation +=
            dt * (kB1 * budget_rate(y, params) +
                  kB3 * budget_rate(y + dt * (kA31 * k1 + kA32 * k2), params) +
                  kB4 * budget_rate(y + dt * (kA41 * k1 + kA42 * k2 + kA43 * k3), params) +
                  kB5 * budget_rate(y + dt * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4),
                                    params) +
                  kB6 * budget_rate(
                            y + dt * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5),
                            params));

        state.b = ynew.max(0.0);  // positivity clamp; rhs at b_j = 0 is >= 0
        state.t += dt;
        traj.sup_c = std::max(traj.sup_c, state.b.sum());

        if (state.t + 1e-14 >= next_sample || state.t >= t_end) {
            record(state.t, state.b);
            while (next_sample <= state.t + 1e-14) next_sample += cadence;
        }

        dt *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
        if (state.t < t_end && t_end - state.t <= dt_floor) break;
    }

    if (traj.samples.back().t != state.t) record(state.t, state.b);
    traj.t_final = state.t;
    return traj;
}

double barrier_sign_test(const CascadeParams& params, int k, int probe_shell,
                         double envelope_c) {
    validate(params);
    if (probe_shell < 0 || probe_shell > params.jmax)
        throw std::invalid_argument("barrier_sign_test: probe shell out of range");
    const double j_ku = solve_jku(k, params.gamma, params.d);
    const double level = std::exp2(k);
    Eigen::ArrayXd b(params.jmax + 1);
    for (int j = 0; j <= params.jmax; ++j)
        b[j] = envelope_c * level * std::exp2((j_ku - j) / 10.0);
    return cascade_rhs(b, params)[probe_shell];
}

std::vector<SweepRow> gamma_sweep(const CascadeParams& base, const std::vector<double>& gammas,
                                  const Eigen::ArrayXd& initial, double horizon, double cadence) {
    std::vector<SweepRow> rows;
    rows.reserve(gammas.size());
    for (double gamma : gammas) {
        CascadeParams params = base;
        params.gamma = gamma;
        CascadeTrajectory traj = integrate_cascade({initial, 0.0}, params, horizon, cadence);
        rows.push_back({gamma, traj.sup_c, traj.blowup_suspect, traj.total_dissipation,
                        traj.t_final});
    }
    return rows;
}

}  // namespace ssns
