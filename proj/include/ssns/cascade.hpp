#pragma once

#include <vector>

#include <Eigen/Core>

#include "ssns/field.hpp"

namespace ssns {

// The dyadic cascade model: the shell inequality system read as an equality,
//
//   db_j/dt = C [ (sum_{k <= j+5} b_k) (sum_{|a| <= 5} b_{j+a})
//                 + sum_{k >= j} 2^{d(j-k)} sum_{|a| <= 5} b_k b_{k+a} ]
//             - D_j b_j,
//
// with shells outside [0, jmax] contributing zero. Both nonlinear terms
// enter with positive sign (worst case of the one-sided bounds), so the
// model has no energy conservation by design.

enum class DissForm {
    paper_j,     // D_j = 2^{(d+2)j/2} / (1+j)^{2 gamma}  (regularized at j = 0)
    symbol_log,  // D_j = 2^{(d+2)j/2} / (log(2 + 2^j))^{2 gamma}
};

struct CascadeParams {
    double coupling = 1.0;  // C
    double gamma = 0.25;
    int d = 2;
    int jmax = 40;
    int alpha_width = 5;
    DissForm diss_form = DissForm::paper_j;
    double atol = 1e-10;
    double rtol = 1e-8;
};

void validate(const CascadeParams& params);

struct CascadeState {
    Eigen::ArrayXd b;
    double t = 0.0;
};

/// Shell dissipation factor D_j.
double shell_dissipation_factor(const CascadeParams& params, int j);

/// Right-hand side of the shell system at the given state.
Eigen::ArrayXd cascade_rhs(const Eigen::ArrayXd& b, const CascadeParams& params);

struct CascadeSample {
    double t = 0.0;
    Eigen::ArrayXd b;
};

struct CascadeTrajectory {
    std::vector<CascadeSample> samples;
    bool blowup_suspect = false;
    int offending_shell = -1;  // shell with the largest error weight at underflow
    double t_final = 0.0;
    double sup_c = 0.0;
    /// Budget functional sum_j int 2^{-(d+2)j/2} b_j^2 / (1+j)^{2 gamma} dt
    /// (symbol_log form when selected), accumulated with the stepper stages.
    double total_dissipation = 0.0;
};

/// Adaptive Dormand-Prince 5(4) with a post-step nonnegativity clamp.
/// Samples are recorded every `cadence` time units (plus first and last).
/// Step-size underflow flags the trajectory blow-up-suspect and stops.
CascadeTrajectory integrate_cascade(CascadeState state, const CascadeParams& params,
                                    double t_end, double cadence);

/// db_l/dt on the barrier configuration b_j = envelope_c 2^k 2^{(j_ku-j)/10}:
/// the sign probe behind the barrier lemma. j_ku solves 2^k = 2^{(d+2)j/2}/j^gamma.
double barrier_sign_test(const CascadeParams& params, int k, int probe_shell,
                         double envelope_c);

struct SweepRow {
    double gamma = 0.0;
    double sup_c = 0.0;
    bool blowup_suspect = false;
    double total_dissipation = 0.0;
    double t_final = 0.0;
};

/// Runs the cascade once per gamma with the same initial data and horizon.
std::vector<SweepRow> gamma_sweep(const CascadeParams& base, const std::vector<double>& gammas,
                                  const Eigen::ArrayXd& initial, double horizon, double cadence);

}  // namespace ssns
