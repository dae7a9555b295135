#pragma once

#include <vector>

#include <Eigen/Core>

#include "ssns/dissipation.hpp"
#include "ssns/field.hpp"
#include "ssns/lp.hpp"

namespace ssns {

// Blow-up-progress bookkeeping. The central quantities are the weighted
// shell norms
//
//     b_j(t) = 2^{(d+2)j/2} ||P_j u(t)||_{L2}
//
// and their sum c(t) = sum_j b_j(t), the Besov norm whose boundedness keeps
// the solution smooth. Everything here is a pure function of a field
// snapshot except ThresholdTracker, which the run loop updates serially.

struct ShellSpectrum {
    Eigen::ArrayXd b;  // indexed by shell 0..jmax
    int d = 2;

    int shells() const { return static_cast<int>(b.size()); }
};

/// Shell spectrum of a velocity field.
ShellSpectrum shell_spectrum(const VectorField& u, const LPBank& bank);

/// Shell spectrum computed from a mean-free vorticity via Biot-Savart
/// (b_j is defined through u, not omega).
ShellSpectrum shell_spectrum(const SpectralField& omega, const LPBank& bank);

/// c(t) = sum_j b_j.
double besov_c(const ShellSpectrum& s);

/// Solves 2^k = 2^{(d+2)j/2} / j^gamma for j > 0 (the critical scale where
/// dissipation catches up with Besov level 2^k). Closed form 2k/(d+2) for
/// gamma = 0, otherwise bisection to |f| <= 1e-10 relative. Throws when the
/// bracket has no sign change (k too small for the gamma > 0 regime).
double solve_jku(int k, double gamma, int d);

/// Crossing times t_k of the thresholds c(t) >= 2^k, k >= 1, detected by
/// linear interpolation between samples. E is frozen at construction.
class ThresholdTracker {
public:
    ThresholdTracker(double initial_energy_norm) : E_(initial_energy_norm) {}

    /// Feed one (t, c(t)) sample; samples must arrive in time order.
    void observe(double t, double c);

    int k_current() const { return k_current_; }
    double E() const { return E_; }
    /// Crossing time of level k (1-based); valid for k <= k_current().
    double t_k(int k) const { return crossings_.at(k - 1); }
    const std::vector<double>& crossings() const { return crossings_; }

private:
    double E_;
    int k_current_ = 0;
    std::vector<double> crossings_;
    bool have_prev_ = false;
    double prev_t_ = 0.0, prev_c_ = 0.0;
};

struct BarrierReport {
    Eigen::ArrayXd margins;  // b_j - C 2^k 2^{(j_ku - j)/10}
    bool breach = false;
    double C = 0.0;
    int k = 0;
    double j_ku = 0.0;
};

/// Evaluates the barrier envelope b_j <= C 2^k 2^{(j_ku - j)/10} at
/// k = tracker.k_current(). Requires k_current >= 1.
BarrierReport barrier_check(const ShellSpectrum& s, const ThresholdTracker& tracker, double C,
                            const DissipationSpec& spec);

/// Smallest envelope constant with no breach for this sample: the fitting
/// mode of the barrier harness.
double barrier_fit_constant(const ShellSpectrum& s, int k, double gamma);

struct ActiveWindow {
    int j_down = 0;   // largest prefix scale with sum_{j<=j_down} b_j within budget (-1: none)
    int j_upcut = 0;  // smallest tail scale with sum_{j>=j_upcut} b_j within budget
    int width = 0;    // number of scales strictly between the two cuts
    bool empty = false;
    double log2_k = 0.0;  // comparison scale: the window should be O(log k)
};

/// Tail cuts with per-tail budget 2^k/20 (jointly the paper's 2^k/10).
/// Requires c(t) >= 2^{k_current}, k_current >= 1.
ActiveWindow active_window(const ShellSpectrum& s, const ThresholdTracker& tracker);

/// One rectangle-rule increment of the dissipation budget. The solver keeps
/// its own accumulator with the stepper's Runge-Kutta stage quadrature; this
/// is the sampled estimate for external consumers.
double dissipation_budget(double accumulator, const VectorField& u, double dt,
                          const DissipationSpec& spec);

/// F = max_j b_j(0) 2^{mu j}: the initial-spectrum fit for the decay barrier.
double fit_envelope_F(const ShellSpectrum& initial, double mu);

/// Margins b_j(t) - e^{KMt} F 2^{-mu j} of the exponential decay barrier.
Eigen::ArrayXd final_barrier_margins(const ShellSpectrum& s, double t, double M, double K,
                                     double F, double mu);

/// One sampled row of a run's diagnostics.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;    // (1/2) ||u||^2
    double c = 0.0;         // Besov norm
    double diss_cum = 0.0;  // integral of <Du, Du> so far
    int k_current = 0;
    double j_ku = 0.0;      // 0 until the tracker has k_current >= 1
    bool barrier_breach = false;
    Eigen::ArrayXd b;
};

}  // namespace ssns
