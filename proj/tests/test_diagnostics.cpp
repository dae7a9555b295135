#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssns/diagnostics.hpp"
#include "ssns/ops.hpp"
#include "ssns/random.hpp"
#include "ssns/solver.hpp"
#include "ssns/transform.hpp"

using namespace ssns;

TEST_CASE("shell spectrum: zeros, point masses, energy envelope") {
    Grid g{64};
    LPBank bank = make_lp_bank(g);

    CHECK(shell_spectrum(zero_field(g), bank).b.abs().maxCoeff() == 0.0);

    // Unit-L2 velocity concentrated where psi_3 = 1: b_3 = 2^{(d+2)3/2} = 64.
    SpectralField omega = zero_field(g);
    add_mode_pair(omega, 8, 0, Complex(1.0, 0.0));
    VectorField u = velocity_from_vorticity(omega);
    const double norm = l2_norm(u);
    omega.coeffs /= norm;  // scales u to unit norm
    ShellSpectrum s = shell_spectrum(omega, bank);
    for (int j = 0; j <= bank.jmax; ++j)
        CHECK(s.b[j] == doctest::Approx(j == 3 ? 64.0 : 0.0).epsilon(1e-12));

    // Energy envelope b_j <= E 2^{(d+2)j/2} for arbitrary data.
    SpectralField r = random_smooth_vorticity(g, 4, 1.7, 5.0);
    const double E = velocity_l2_norm(r);
    ShellSpectrum rs = shell_spectrum(r, bank);
    for (int j = 0; j <= bank.jmax; ++j)
        CHECK(rs.b[j] <= E * std::exp2(2.0 * j) * (1.0 + 1e-12));
}

TEST_CASE("besov sum") {
    ShellSpectrum s{Eigen::ArrayXd::Zero(8), 2};
    CHECK(besov_c(s) == 0.0);
    s.b[5] = 3.0;
    CHECK(besov_c(s) == 3.0);
    s.b[5] = 0.0;
    s.b[1] = 1.0;
    s.b[2] = 1.0;
    CHECK(besov_c(s) == 2.0);
}

TEST_CASE("critical scale solver j_ku") {
    CHECK(solve_jku(20, 0.0, 2) == 10.0);  // closed form, exact

    // Independent fixed-point oracle for gamma = 1/4, k = 20:
    // j = (2/(d+2)) (k + gamma log2 j).
    double oracle = 10.0;
    for (int it = 0; it < 200; ++it) oracle = 0.5 * (20.0 + 0.25 * std::log2(oracle));
    const double j = solve_jku(20, 0.25, 2);
    CHECK(j == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(j == doctest::Approx(10.42).epsilon(1e-3));

    // Monotone in k.
    double prev = 0.0;
    for (int k = 1; k <= 30; ++k) {
        const double jk = solve_jku(k, 0.25, 2);
        CHECK(jk > prev);
        prev = jk;
    }

    CHECK_THROWS_AS(solve_jku(0, 0.25, 2), std::invalid_argument);
    // 2^{(d+2)j/2}/j^gamma has minimum ~4 > 2^1: no solution for this gamma.
    CHECK_THROWS_AS(solve_jku(1, 1.386, 2), std::invalid_argument);
}

TEST_CASE("threshold tracker: interpolated crossings") {
    ThresholdTracker tracker(1.0);
    CHECK(tracker.k_current() == 0);

    tracker.observe(0.0, 1.5);
    CHECK(tracker.k_current() == 0);

    tracker.observe(1.0, 3.0);  // crosses 2 at t = 1/3
    CHECK(tracker.k_current() == 1);
    CHECK(tracker.t_k(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    tracker.observe(2.0, 9.0);  // crosses 4 and 8
    CHECK(tracker.k_current() == 3);
    CHECK(tracker.t_k(2) == doctest::Approx(1.0 + 1.0 / 6.0).epsilon(1e-14));
    CHECK(tracker.t_k(3) == doctest::Approx(1.0 + 5.0 / 6.0).epsilon(1e-14));
    // Strictly increasing crossing times.
    CHECK(tracker.t_k(1) < tracker.t_k(2));
    CHECK(tracker.t_k(2) < tracker.t_k(3));

    CHECK_THROWS_AS(tracker.observe(1.5, 2.0), std::invalid_argument);  // time reversal
}

TEST_CASE("barrier check: envelope arithmetic and breach flag") {
    ThresholdTracker tracker(1.0);
    tracker.observe(0.0, 1.0);
    ShellSpectrum s{Eigen::ArrayXd::Zero(20), 2};
    CHECK_THROWS_AS(barrier_check(s, tracker, 2.0, {0.0, 2}), std::invalid_argument);

    // Drive the tracker to k = 10; gamma = 0 gives j_ku = 5 exactly.
    tracker.observe(1.0, 1030.0);
    CHECK(tracker.k_current() == 10);

    BarrierReport zero_rep = barrier_check(s, tracker, 2.0, {0.0, 2});
    CHECK_FALSE(zero_rep.breach);
    CHECK(zero_rep.j_ku == 5.0);
    // Envelope values: 2 * 2^10 * 2^{(5-j)/10} -> 2048 at j = 5, 1024 at j = 15.
    CHECK(-zero_rep.margins[5] == doctest::Approx(2048.0).epsilon(1e-14));
    CHECK(-zero_rep.margins[15] == doctest::Approx(1024.0).epsilon(1e-14));

    // A spectrum exactly on the envelope: all margins 0, closed inequality.
    ShellSpectrum on{Eigen::ArrayXd(20), 2};
    for (int j = 0; j < 20; ++j) on.b[j] = 2.0 * 1024.0 * std::exp2((5.0 - j) / 10.0);
    BarrierReport on_rep = barrier_check(on, tracker, 2.0, {0.0, 2});
    CHECK_FALSE(on_rep.breach);
    CHECK(on_rep.margins.abs().maxCoeff() <= 1e-9);

    // Nudge one shell above: breach.
    on.b[7] *= 1.0 + 1e-6;
    CHECK(barrier_check(on, tracker, 2.0, {0.0, 2}).breach);

    // Fitting mode returns the smallest non-breaching constant.
    const double fit = barrier_fit_constant(on, 10, 0.0);
    CHECK(fit == doctest::Approx(2.0 * (1.0 + 1e-6)).epsilon(1e-12));
}

TEST_CASE("active window: single shell and geometric spectra") {
    ThresholdTracker tracker(1.0);
    tracker.observe(0.0, 1.0);
    tracker.observe(1.0, 1024.0);  // k = 10
    const int k = tracker.k_current();
    REQUIRE(k == 10);

    // Single occupied shell: one active scale.
    ShellSpectrum single{Eigen::ArrayXd::Zero(30), 2};
    single.b[12] = 1024.0;
    ActiveWindow w = active_window(single, tracker);
    CHECK(w.j_down == 11);
    CHECK(w.j_upcut == 13);
    CHECK(w.width == 1);
    CHECK_FALSE(w.empty);

    // Geometric spectrum around j0: O(1) window; verify against a direct
    // tail summation with the same budget.
    const int j0 = 14;
    ShellSpectrum geo{Eigen::ArrayXd(30), 2};
    for (int j = 0; j < 30; ++j) geo.b[j] = 1024.0 * std::exp2(-std::abs(j - j0));
    ActiveWindow wg = active_window(geo, tracker);

    const double budget = 1024.0 / 20.0;
    int j_down = -1;
    double acc = 0.0;
    for (int j = 0; j < 30; ++j) {
        acc += geo.b[j];
        if (acc > budget) break;
        j_down = j;
    }
    int j_up = 30;
    acc = 0.0;
    for (int j = 29; j >= 0; --j) {
        acc += geo.b[j];
        if (acc > budget) break;
        j_up = j;
    }
    CHECK(wg.j_down == j_down);
    CHECK(wg.j_upcut == j_up);
    CHECK(wg.width == j_up - j_down - 1);
    CHECK(wg.width <= 14);  // O(1) around j0 at this decay rate

    // Zeros with no recorded crossing: precondition fails.
    ThresholdTracker fresh(1.0);
    fresh.observe(0.0, 0.0);
    ShellSpectrum zeros{Eigen::ArrayXd::Zero(30), 2};
    CHECK_THROWS_AS(active_window(zeros, fresh), std::invalid_argument);
}

TEST_CASE("dissipation budget: increments and closed-form linear decay") {
    Grid g{32};
    DissipationSpec spec{0.25, 2};
    VectorField u = zero_vector_field(g);
    add_mode_pair(u.x, 2, 0, Complex(0.5, 0.0));

    CHECK(dissipation_budget(1.25, u, 0.0, spec) == 1.25);
    const double rate = dissipation_rate(u, spec);
    CHECK(dissipation_budget(0.0, u, 0.1, spec) == doctest::Approx(0.1 * rate).epsilon(1e-15));

    // Linear-only solver run against (1 - e^{-2 m^2 T}) ||u0||^2 / 2.
    SolverConfig cfg;
    cfg.grid = g;
    cfg.diss = spec;
    cfg.advection = false;
    cfg.t_end = 0.5;
    cfg.dt_max = 0.01;
    SolverState state{zero_field(g)};
    add_mode_pair(state.omega, 2, 0, Complex(0.4, 0.1));
    const double u0_sq = l2_norm_sq(velocity_from_vorticity(state.omega));
    Stepper stepper(cfg);
    while (state.t < cfg.t_end - 1e-14) REQUIRE(stepper.step(state) == StepStatus::ok);
    const double m = multiplier_symbol(spec, 2.0);
    const double closed_form = 0.5 * u0_sq * (1.0 - std::exp(-2.0 * m * m * cfg.t_end));
    CHECK(state.diss_cum == doctest::Approx(closed_form).epsilon(1e-7));
}

TEST_CASE("final barrier: fit at t = 0 and decay under the semigroup") {
    Grid g{64};
    LPBank bank = make_lp_bank(g);
    DissipationSpec spec{0.25, 2};
    const double mu = 1.0;

    SpectralField omega = random_smooth_vorticity(g, 55, 1.0, 5.0);
    ShellSpectrum s0 = shell_spectrum(omega, bank);
    const double F = fit_envelope_F(s0, mu);

    // t = 0: no breach by construction of F.
    CHECK(final_barrier_margins(s0, 0.0, 1.0, 1.0, F, mu).maxCoeff() <= 1e-12 * F);

    // Zero solution: no breach for all t.
    ShellSpectrum z{Eigen::ArrayXd::Zero(bank.shells()), 2};
    CHECK(final_barrier_margins(z, 3.0, 1.0, 1.0, F, mu).maxCoeff() <= 0.0);

    // Linear-only evolution decays shell-by-shell: no breach for any K >= 0.
    for (double t : {0.1, 0.5, 1.0}) {
        ShellSpectrum st = shell_spectrum(apply_semigroup(omega, spec, t), bank);
        CHECK(final_barrier_margins(st, t, 1.0, 0.0, F, mu).maxCoeff() <= 1e-12 * F);
    }
}

TEST_CASE("bernstein chain controls shell vorticity by b_j") {
    // ||P_j w||_inf <= C_B 2^{dj/2} ||P_j w||_2 <= C_B 2^{dj/2} 2^{j+1} ||P_j u||_2
    //              <= 2 C_B b_j  (d = 2), each link checked separately.
    Grid g{64};
    LPBank bank = make_lp_bank(g);
    const double C_B = 4.0;  // generous frozen Bernstein constant for this profile

    for (int seed = 0; seed < 4; ++seed) {
        SpectralField omega = random_smooth_vorticity(g, 200 + seed, 1.0, 6.0);
        VectorField u = velocity_from_vorticity(omega);
        Eigen::ArrayXd wn = shell_l2_norms(omega, bank);
        Eigen::ArrayXd un = shell_l2_norms(u, bank);
        ShellSpectrum s = shell_spectrum(omega, bank);
        for (int j = 0; j <= bank.jmax; ++j) {
            if (wn[j] == 0.0) continue;
            const double winf = linf_norm(project_shell(omega, j, bank));
            CHECK(winf <= C_B * std::exp2(j) * wn[j] * (1.0 + 1e-12));
            CHECK(wn[j] <= std::exp2(j + 1) * un[j] * (1.0 + 1e-12));
            CHECK(winf <= 2.0 * C_B * s.b[j] * (1.0 + 1e-12));
        }
    }
}
