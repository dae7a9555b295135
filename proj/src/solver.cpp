#include "ssns/solver.hpp"

#include <cmath>

#include "ssns/transform.hpp"

namespace ssns {

void validate(const SolverConfig& cfg) {
    validate(cfg.grid);
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety < 1.0))
        throw std::invalid_argument("solver.cfl_safety must lie in (0, 1)");
    if (!(cfg.dt_min > 0.0 && cfg.dt_min <= cfg.dt_max))
        throw std::invalid_argument("solver.dt_min must satisfy 0 < dt_min <= dt_max");
    if (cfg.t_end < 0.0) throw std::invalid_argument("solver.t_end must be nonnegative");
    if (cfg.cadence <= 0.0) throw std::invalid_argument("output.cadence must be positive");
    if (cfg.diss.gamma < 0.0) throw std::invalid_argument("dissipation.gamma must be nonnegative");
}

namespace {

Eigen::ArrayXXd inverse_ksq_table(const Grid& g) {
    ModeTables tables = make_mode_tables(g);
    return (tables.ksq > 0.0).select(tables.ksq.inverse(), 0.0);
}

}  // namespace

Stepper::Stepper(const SolverConfig& cfg) : cfg_(cfg) {
    validate(cfg_);
    cutoff_ = dealias_cutoff(cfg_.grid, cfg_.dealias_fraction);
    ModeTables tables = make_mode_tables(cfg_.grid);
    weight_ = tables.weight;
    inv_ksq_ = inverse_ksq_table(cfg_.grid);
    msq_ = cfg_.dissipation ? multiplier_sq_table(cfg_.grid, cfg_.diss)
                            : Eigen::ArrayXXd::Zero(cfg_.grid.n, cfg_.grid.spectral_cols());
}

double Stepper::rate(const SpectralField& omega) const {
    if (!cfg_.dissipation) return 0.0;
    return (weight_ * msq_ * inv_ksq_ * omega.coeffs.abs2()).sum();
}

SpectralField Stepper::rhs(const SpectralField& omega, double* umax_out) {
    if (!cfg_.advection) {
        if (umax_out) *umax_out = 0.0;
        return zero_field(cfg_.grid);
    }
    VectorField u = velocity_from_vorticity(omega);
    if (umax_out) *umax_out = linf_norm(u);
    SpectralField adv = advect(u, omega);
    adv.coeffs = -adv.coeffs;
    return adv;
}

StepStatus Stepper::step(SolverState& state) {
    // Stage 1 is dt-free, so the CFL velocity for this step comes from the
    // current state itself; the step stays a pure function of the state.
    double umax = 0.0;
    SpectralField k1 = rhs(state.omega, &umax);
    last_umax_ = umax;

    double dt = cfg_.dt_max;
    if (cfg_.advection && umax > 0.0) {
        const double dt_cfl = cfg_.cfl_safety * cfg_.grid.dx() / umax;
        if (dt_cfl < cfg_.dt_min) return StepStatus::dt_underflow;
        dt = std::min(dt, dt_cfl);
    }
    dt = std::min(dt, cfg_.t_end - state.t);  // landing step may be short
    if (dt <= 0.0) return StepStatus::ok;

    if (dt != tabulated_dt_) {
        e_full_ = (-dt * msq_).exp().cast<Complex>();
        e_half_ = (-0.5 * dt * msq_).exp().cast<Complex>();
        tabulated_dt_ = dt;
    }

    const auto& w0 = state.omega.coeffs;
    const Grid& g = cfg_.grid;

    // Integrating-factor RK4 stage states.
    SpectralField s2{g, e_half_ * (w0 + 0.5 * dt * k1.coeffs)};
    SpectralField k2 = rhs(s2, nullptr);
    SpectralField s3{g, e_half_ * w0 + 0.5 * dt * k2.coeffs};
    SpectralField k3 = rhs(s3, nullptr);
    SpectralField s4{g, e_full_ * w0 + dt * (e_half_ * k3.coeffs)};
    SpectralField k4 = rhs(s4, nullptr);

    SpectralField next{g, e_full_ * (w0 + (dt / 6.0) * k1.coeffs) +
                              (dt / 3.0) * (e_half_ * (k2.coeffs + k3.coeffs)) +
                              (dt / 6.0) * k4.coeffs};
    if (!all_finite(next)) return StepStatus::nan_detected;

    // Same RK4 quadrature for the dissipation budget, on the stage states.
    state.diss_cum +=
        (dt / 6.0) * (rate(state.omega) + 2.0 * (rate(s2) + rate(s3)) + rate(s4));

    state.omega = std::move(next);
    set_mean_zero(state.omega);
    state.t += dt;
    state.dt = dt;
    state.step_count += 1;
    return StepStatus::ok;
}

StepStatus step(SolverState& state, const SolverConfig& cfg) {
    Stepper stepper(cfg);
    return stepper.step(state);
}

double velocity_l2_norm(const SpectralField& omega) {
    ModeTables tables = make_mode_tables(omega.grid);
    Eigen::ArrayXXd inv_ksq = (tables.ksq > 0.0).select(tables.ksq.inverse(), 0.0);
    return std::sqrt((tables.weight * inv_ksq * omega.coeffs.abs2()).sum());
}

double kinetic_energy(const SpectralField& omega) {
    const double norm = velocity_l2_norm(omega);
    return 0.5 * norm * norm;
}

std::string to_string(Termination cause) {
    switch (cause) {
        case Termination::completed: return "completed";
        case Termination::dt_underflow: return "dt_underflow";
        case Termination::nan_detected: return "nan_detected";
    }
    return "unknown";
}

RunReport run(const SolverConfig& cfg, SolverState state, const LPBank& bank, double barrier_C,
              const DiagnosticsSink& sink) {
    validate(cfg);
    if (!(state.omega.grid == cfg.grid))
        throw std::invalid_argument("run: initial data grid mismatch");
    set_mean_zero(state.omega);
    dealias(state.omega, dealias_cutoff(cfg.grid, cfg.dealias_fraction));

    ThresholdTracker tracker(velocity_l2_norm(state.omega));
    Stepper stepper(cfg);

    auto emit = [&](const SolverState& s) {
        ShellSpectrum spectrum = shell_spectrum(s.omega, bank);
        DiagnosticsRecord rec;
        rec.t = s.t;
        rec.energy = kinetic_energy(s.omega);
        rec.c = besov_c(spectrum);
        rec.diss_cum = s.diss_cum;
        rec.k_current = tracker.k_current();
        if (tracker.k_current() >= 1) {
            BarrierReport barrier = barrier_check(spectrum, tracker, barrier_C, cfg.diss);
            rec.j_ku = barrier.j_ku;
            rec.barrier_breach = barrier.breach;
        }
        rec.b = spectrum.b;
        if (sink) sink(rec, s);
    };

    auto observe = [&](const SolverState& s) {
        tracker.observe(s.t, besov_c(shell_spectrum(s.omega, bank)));
    };

    observe(state);
    emit(state);
    double next_sample = state.t + cfg.cadence;
    double last_emitted_t = state.t;

    RunReport report;
    while (state.t < cfg.t_end) {
        if (cfg.t_end - state.t <= 1e-15 * std::max(1.0, cfg.t_end)) break;
        const StepStatus status = stepper.step(state);
        if (status == StepStatus::dt_underflow) {
            report.cause = Termination::dt_underflow;
            break;
        }
        if (status == StepStatus::nan_detected) {
            report.cause = Termination::nan_detected;
            break;
        }
        observe(state);
        if (state.t + 1e-12 >= next_sample || state.t >= cfg.t_end) {
            emit(state);
            last_emitted_t = state.t;
            while (next_sample <= state.t + 1e-12) next_sample += cfg.cadence;
        }
    }
    if (state.t != last_emitted_t) emit(state);

    report.t_final = state.t;
    report.steps = state.step_count;
    report.energy_final = kinetic_energy(state.omega);
    report.diss_cum = state.diss_cum;
    return report;
}

RunReport run(const SolverConfig& cfg, SpectralField initial, const LPBank& bank,
              double barrier_C, const DiagnosticsSink& sink) {
    return run(cfg, SolverState{std::move(initial)}, bank, barrier_C, sink);
}

}  // namespace ssns
