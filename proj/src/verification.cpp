#include "ssns/verification.hpp"

#include <cmath>

#include <json.hpp>

#include "ssns/ops.hpp"
#include "ssns/random.hpp"
#include "ssns/transform.hpp"

namespace ssns {

TrichotomyResult trichotomy_check(const SpectralField& omega, int j, const LPBank& bank,
                                  const DissipationSpec& spec) {
    TrichotomyResult res;
    SpectralField pj_omega = project_shell(omega, j, bank);
    const double pj_norm = l2_norm(pj_omega);
    if (pj_norm == 0.0) {
        res.degenerate = true;
        return res;
    }

    // Instantaneous tendency: d(omega)/dt = -(u . grad omega) - D^2 omega.
    SpectralField tendency = nonlinear_term(omega);
    Eigen::ArrayXXd msq = multiplier_sq_table(omega.grid, spec);
    tendency.coeffs = -tendency.coeffs - msq.cast<Complex>() * omega.coeffs;
    res.lhs = inner(project_shell(tendency, j, bank), pj_omega) / pj_norm;

    SpectralField diss_field{omega.grid, msq.cast<Complex>() * omega.coeffs};
    res.dissipation = inner(project_shell(diss_field, j, bank), pj_omega) / pj_norm;
    res.advective = res.lhs + res.dissipation;

    const Eigen::ArrayXd norms = shell_l2_norms(omega, bank);
    const int jmax = bank.jmax;
    double low = 0.0;
    for (int k = 0; k <= std::min(jmax, j + 5); ++k) low += std::exp2(0.5 * spec.d * k) * norms[k];
    double near = 0.0;
    for (int a = -5; a <= 5; ++a)
        if (j + a >= 0 && j + a <= jmax) near += norms[j + a];
    double high = 0.0;
    for (int k = j; k <= jmax; ++k)
        for (int a = -5; a <= 5; ++a)
            if (k + a >= 0 && k + a <= jmax)
                high += std::exp2(0.5 * spec.d * j) * norms[k] * norms[k + a];
    res.nl_bound = low * near + high;

    res.rhs = res.nl_bound - res.dissipation;
    res.ratio = res.nl_bound > 0.0 ? res.advective / res.nl_bound : 0.0;
    return res;
}

namespace {

SpectralField apply_q(const SpectralField& f, int j, const LPBank& bank) {
    SpectralField out = zero_field(f.grid);
    for (int beta = -3; beta <= 3; ++beta) {
        const int shell = j + beta;
        if (shell < 0 || shell > bank.jmax) continue;
        out.coeffs += project_shell(f, shell, bank).coeffs;
    }
    return out;
}

}  // namespace

CommutatorResult commutator_check(int l, int j, const VectorField& u_low,
                                  const SpectralField& f, const SpectralField& g,
                                  const LPBank& bank) {
    if (l > j - 3)
        throw std::invalid_argument("commutator_check: requires l <= j - 3");
    if (l < 0 || j > bank.jmax)
        throw std::invalid_argument("commutator_check: shell out of range");

    VectorField pl_u = project_shell(u_low, l, bank);
    SpectralField qf = apply_q(f, j, bank);
    SpectralField t1 = apply_q(advect(pl_u, f), j, bank);
    SpectralField t2 = advect(pl_u, qf);

    CommutatorResult res;
    res.lhs = inner(t1, g) - inner(t2, g);
    res.bound = std::exp2(l) * linf_norm(pl_u) * l2_norm(f) * l2_norm(g);
    res.ratio = res.bound > 0.0 ? std::abs(res.lhs) / res.bound : 0.0;
    return res;
}

double skew_adjoint_check(const VectorField& u_low, const SpectralField& f) {
    return inner(advect(u_low, f), f);
}

Eigen::ArrayXd bernstein_fit(const LPBank& bank, int ensemble, std::uint64_t seed) {
    Eigen::ArrayXd constants = Eigen::ArrayXd::Zero(bank.shells());
    for (int j = 0; j <= bank.jmax; ++j) {
        for (int e = 0; e < ensemble; ++e) {
            SpectralField f = random_shell_scalar(bank.grid, bank, j,
                                                  seed + 1315423911ull * j + e);
            SpectralField pj = project_shell(f, j, bank);
            const double norm2 = l2_norm(pj);
            if (norm2 == 0.0) continue;
            const double ratio = linf_norm(pj) / (std::exp2(0.5 * Grid::d * j) * norm2);
            constants[j] = std::max(constants[j], ratio);
        }
    }
    return constants;
}

std::vector<CheckReport> run_verification(const VerificationConfig& cfg) {
    LPBank bank = make_lp_bank(cfg.grid);
    std::vector<CheckReport> reports;

    {
        CheckReport rep;
        rep.name = "trichotomy";
        rep.ensemble = cfg.ensemble;
        rep.seed = cfg.seed;
        const int j_hi = bank.jmax - 1;
        for (int j = 1; j <= j_hi; ++j) rep.shells.push_back(j);
        double worst = 0.0;
        for (int e = 0; e < cfg.ensemble; ++e) {
            SpectralField omega =
                random_smooth_vorticity(cfg.grid, cfg.seed + e, 1.0, 4.0 + (e % 5));
            for (int j : rep.shells) {
                TrichotomyResult res = trichotomy_check(omega, j, bank, cfg.spec);
                if (!res.degenerate) worst = std::max(worst, res.ratio);
            }
        }
        rep.fitted_constant = worst;
        rep.max_ratio = worst;
        reports.push_back(rep);
    }

    {
        CheckReport rep;
        rep.name = "commutator";
        rep.ensemble = cfg.ensemble;
        rep.seed = cfg.seed;
        const int j = bank.jmax - 1;
        rep.shells = {j};
        double worst = 0.0;
        for (int e = 0; e < cfg.ensemble; ++e) {
            VectorField u_low = random_divfree_low(cfg.grid, cfg.seed + 7919 * e, 3, 1.0);
            SpectralField f = random_shell_scalar(cfg.grid, bank, j, cfg.seed + 104729 + e);
            SpectralField g = random_shell_scalar(cfg.grid, bank, j, cfg.seed + 1299709 + e);
            for (int l : {0, 1, 2}) {
                CommutatorResult res = commutator_check(l, j, u_low, f, g, bank);
                worst = std::max(worst, res.ratio);
            }
        }
        rep.fitted_constant = worst;
        rep.max_ratio = worst;
        reports.push_back(rep);
    }

    {
        CheckReport rep;
        rep.name = "skew_adjoint";
        rep.ensemble = cfg.ensemble;
        rep.seed = cfg.seed;
        double worst = 0.0;
        for (int e = 0; e < cfg.ensemble; ++e) {
            VectorField u_low = random_divfree_low(cfg.grid, cfg.seed + 31 * e, 4, 1.0);
            SpectralField f = random_smooth_vorticity(cfg.grid, cfg.seed + 17 + e, 1.0, 6.0);
            const double pairing = skew_adjoint_check(u_low, f);
            const double scale = linf_norm(u_low) * l2_norm_sq(f);
            worst = std::max(worst, std::abs(pairing) / std::max(scale, 1e-300));
        }
        rep.fitted_constant = worst;
        rep.max_ratio = worst;
        reports.push_back(rep);
    }

    {
        CheckReport rep;
        rep.name = "bernstein";
        rep.ensemble = cfg.ensemble;
        rep.seed = cfg.seed;
        for (int j = 0; j <= bank.jmax; ++j) rep.shells.push_back(j);
        Eigen::ArrayXd constants = bernstein_fit(bank, cfg.ensemble, cfg.seed);
        rep.fitted_constant = constants.maxCoeff();
        rep.max_ratio = rep.fitted_constant;
        reports.push_back(rep);
    }

    return reports;
}

std::string verification_report_json(const VerificationConfig& cfg,
                                     const std::vector<CheckReport>& checks) {
    nlohmann::json doc;
    doc["phi"] =
        "phi(x) = 1 for x <= 1, 0 for x >= 2, h(2-x)/(h(2-x)+h(x-1)) on (1,2) with "
        "h(t) = exp(-1/t)";
    doc["grid_n"] = cfg.grid.n;
    doc["gamma"] = cfg.spec.gamma;
    doc["seed"] = cfg.seed;
    doc["checks"] = nlohmann::json::array();
    for (const CheckReport& rep : checks) {
        nlohmann::json entry;
        entry["name"] = rep.name;
        entry["shells"] = rep.shells;
        entry["ensemble"] = rep.ensemble;
        entry["fitted_constant"] = rep.fitted_constant;
        entry["max_ratio"] = rep.max_ratio;
        entry["seed"] = rep.seed;
        doc["checks"].push_back(entry);
    }
    return doc.dump(2) + "\n";
}

}  // namespace ssns
