#pragma once

#include <functional>
#include <string>

#include "ssns/diagnostics.hpp"
#include "ssns/dissipation.hpp"
#include "ssns/field.hpp"
#include "ssns/ops.hpp"

namespace ssns {

// Time integration of the 2-d vorticity equation
//
//     d(omega)/dt + u . grad omega = -D^2 omega,     u = BiotSavart(omega),
//
// by integrating-factor RK4: the stiff dissipation is applied as an exact
// per-mode exponential, the advection term is advanced explicitly. The step
// size follows the advective CFL condition dt = cfl_safety * dx / ||u||_inf,
// clamped to [dt_min, dt_max].

struct SolverConfig {
    Grid grid;
    DissipationSpec diss;
    double cfl_safety = 0.4;
    double dt_min = 1e-9;
    double dt_max = 5e-3;
    double dealias_fraction = 2.0 / 3.0;
    double t_end = 1.0;
    double cadence = 0.05;  // diagnostics sampling interval
    bool advection = true;
    bool dissipation = true;
};

void validate(const SolverConfig& cfg);

struct SolverState {
    SpectralField omega;
    double t = 0.0;
    long step_count = 0;
    double dt = 0.0;        // last step size taken
    double diss_cum = 0.0;  // integral of <Du, Du>, stage-quadrature accurate
};

enum class StepStatus { ok, dt_underflow, nan_detected };

/// Owns the tabulated semigroup factors and scratch state for one run; a
/// single owner advances the state, one stepper per worker.
class Stepper {
public:
    explicit Stepper(const SolverConfig& cfg);

    /// Advances one step (truncated so t never passes t_end). On
    /// dt_underflow or nan_detected the state is left at the last good step.
    StepStatus step(SolverState& state);

    /// ||u||_inf at the start of the most recent step.
    double last_umax() const { return last_umax_; }

private:
    SpectralField rhs(const SpectralField& omega, double* umax_out);
    double rate(const SpectralField& omega) const;

    SolverConfig cfg_;
    int cutoff_;
    Eigen::ArrayXXd msq_;
    Eigen::ArrayXXd weight_, inv_ksq_;
    Eigen::ArrayXXcd e_full_, e_half_;  // exp(-m^2 dt), exp(-m^2 dt/2)
    double tabulated_dt_ = -1.0;
    double last_umax_ = 0.0;
};

enum class Termination { completed, dt_underflow, nan_detected };

std::string to_string(Termination cause);

struct RunReport {
    Termination cause = Termination::completed;
    double t_final = 0.0;
    long steps = 0;
    double energy_final = 0.0;
    double diss_cum = 0.0;
};

/// Diagnostics sink: receives each sampled record together with the state
/// snapshot it was computed from.
using DiagnosticsSink = std::function<void(const DiagnosticsRecord&, const SolverState&)>;

/// Integrates the given state to t_end (or abort), feeding the tracker
/// every step and emitting records at the configured cadence plus at the
/// final state. barrier_C is the Lemma-3 envelope constant used for the
/// per-record breach flag. Accepts a mid-run state (resume) as well as
/// fresh initial data at t = 0.
RunReport run(const SolverConfig& cfg, SolverState state, const LPBank& bank, double barrier_C,
              const DiagnosticsSink& sink);

/// Convenience entry for fresh initial vorticity.
RunReport run(const SolverConfig& cfg, SpectralField initial, const LPBank& bank,
              double barrier_C, const DiagnosticsSink& sink);

/// Single-step convenience wrapper around Stepper.
StepStatus step(SolverState& state, const SolverConfig& cfg);

/// Kinetic energy (1/2)||u||^2 evaluated from the vorticity.
double kinetic_energy(const SpectralField& omega);

/// ||u||_{L2} evaluated from the vorticity.
double velocity_l2_norm(const SpectralField& omega);

}  // namespace ssns
