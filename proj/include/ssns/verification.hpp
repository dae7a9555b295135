#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ssns/dissipation.hpp"
#include "ssns/field.hpp"
#include "ssns/lp.hpp"

namespace ssns {

// Numerical verification of the estimates behind the shell inequality
// system. "Verification" here always means fitted ratios over seeded
// ensembles staying bounded, never a symbolic proof; constants depend on
// the fixed cutoff profile and are reported next to it.

struct TrichotomyResult {
    double lhs = 0.0;        // d/dt ||P_j omega|| from the instantaneous PDE rhs
    double rhs = 0.0;        // nonlinear bound (C = 1) minus the exact shell dissipation
    double ratio = 0.0;      // advective part / nonlinear bound
    double advective = 0.0;  // lhs + exact dissipation
    double dissipation = 0.0;
    double nl_bound = 0.0;
    bool degenerate = false;  // ||P_j omega|| = 0: skipped
};

/// Checks the shell derivative estimate at shell j: the advective part of
/// d/dt ||P_j omega|| must be controlled by the trichotomy bound
/// (sum_{k<=j+5} 2^{dk/2} ||P_k w||)(sum_{|a|<=5} ||P_{j+a} w||)
///   + sum_{k>=j} 2^{dj/2} sum_{|a|<=5} ||P_k w|| ||P_{k+a} w||.
TrichotomyResult trichotomy_check(const SpectralField& omega, int j, const LPBank& bank,
                                  const DissipationSpec& spec);

struct CommutatorResult {
    double lhs = 0.0;    // <[Q, P_l u . grad] f, g>
    double bound = 0.0;  // 2^l ||P_l u||_inf ||f||_2 ||g||_2
    double ratio = 0.0;
};

/// Commutator estimate with Q = sum_{|beta| <= 3} P_{j+beta}. Requires
/// l <= j - 3 (the advecting field must sit well below the target shell).
CommutatorResult commutator_check(int l, int j, const VectorField& u_low,
                                  const SpectralField& f, const SpectralField& g,
                                  const LPBank& bank);

/// <u_low . grad f, f>, which vanishes for divergence-free u_low.
double skew_adjoint_check(const VectorField& u_low, const SpectralField& f);

/// Per-shell max over the ensemble of ||P_j f||_inf / (2^{dj/2} ||P_j f||_2)
/// for random shell-localized fields.
Eigen::ArrayXd bernstein_fit(const LPBank& bank, int ensemble, std::uint64_t seed);

struct CheckReport {
    std::string name;
    std::vector<int> shells;
    int ensemble = 0;
    double fitted_constant = 0.0;
    double max_ratio = 0.0;
    std::uint64_t seed = 0;
};

struct VerificationConfig {
    Grid grid;
    DissipationSpec spec;
    int ensemble = 100;
    std::uint64_t seed = 1;
};

/// Runs all four checks over seeded ensembles.
std::vector<CheckReport> run_verification(const VerificationConfig& cfg);

/// JSON text of the verification report (phi definition, grid, seed, checks).
std::string verification_report_json(const VerificationConfig& cfg,
                                     const std::vector<CheckReport>& checks);

}  // namespace ssns
