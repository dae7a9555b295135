#include "ssns/driver.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "ssns/verification.hpp"

namespace ssns {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

DriverResult finish_run(const RunConfig& cfg, const RunReport& report,
                        const std::vector<DiagnosticsRecord>& records,
                        const SolverState& final_state, bool quiet, std::ostream& log) {
    write_timeseries(join(cfg.out_dir, "timeseries.csv"), records);
    Checkpoint ckpt{2, cfg.solver.grid.n, cfg.solver.diss.gamma, final_state};
    save_checkpoint(join(cfg.out_dir, "final.ckpt"), ckpt);

    DriverResult result;
    result.report = report;
    std::ostringstream summary;
    summary << to_string(report.cause) << " t=" << report.t_final << " steps=" << report.steps
            << " energy=" << report.energy_final << " diss_cum=" << report.diss_cum;
    result.summary = summary.str();
    result.exit_code = report.cause == Termination::completed ? 0 : 3;
    if (!quiet) log << result.summary << "\n";
    return result;
}

}  // namespace

DriverResult run_simulate(const RunConfig& cfg, bool quiet, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    LPBank bank = make_lp_bank(cfg.solver.grid);
    SpectralField initial = make_initial_vorticity(cfg.solver.grid, cfg.init);

    std::vector<DiagnosticsRecord> records;
    SolverState final_state;
    RunReport report = run(cfg.solver, std::move(initial), bank, cfg.barrier_C,
                           [&](const DiagnosticsRecord& rec, const SolverState& state) {
                               records.push_back(rec);
                               final_state = state;
                           });
    return finish_run(cfg, report, records, final_state, quiet, log);
}

DriverResult run_resume(const RunConfig& cfg, const std::string& checkpoint_path, bool quiet,
                        std::ostream& log) {
    ensure_dir(cfg.out_dir);
    Checkpoint ckpt = load_checkpoint(checkpoint_path);
    if (ckpt.n != cfg.solver.grid.n)
        throw ConfigError("checkpoint grid n=" + std::to_string(ckpt.n) +
                          " does not match config grid.n");
    if (ckpt.gamma != cfg.solver.diss.gamma)
        throw ConfigError("checkpoint gamma does not match dissipation.gamma");

    // The stepper is a pure function of the state, so continuing from the
    // checkpoint reproduces an uninterrupted run's remaining trajectory
    // exactly. The Besov tracker and budget accumulator restart here.
    LPBank bank = make_lp_bank(cfg.solver.grid);
    std::vector<DiagnosticsRecord> records;
    SolverState final_state;
    RunReport report = run(cfg.solver, std::move(ckpt.state), bank, cfg.barrier_C,
                           [&](const DiagnosticsRecord& rec, const SolverState& state) {
                               records.push_back(rec);
                               final_state = state;
                           });
    return finish_run(cfg, report, records, final_state, quiet, log);
}

std::vector<DiagnosticsRecord> cascade_records(const CascadeTrajectory& traj,
                                               const CascadeParams& params, double barrier_C) {
    std::vector<DiagnosticsRecord> records;
    records.reserve(traj.samples.size());
    ThresholdTracker tracker(0.0);
    for (const CascadeSample& sample : traj.samples) {
        ShellSpectrum spectrum{sample.b, params.d};
        const double c = besov_c(spectrum);
        tracker.observe(sample.t, c);

        DiagnosticsRecord rec;
        rec.t = sample.t;
        double energy = 0.0;
        for (int j = 0; j < sample.b.size(); ++j)
            energy += std::exp2(-(params.d + 2.0) * j) * sample.b[j] * sample.b[j];
        rec.energy = 0.5 * energy;
        rec.c = c;
        rec.diss_cum = 0.0;  // filled by caller for the final row if desired
        rec.k_current = tracker.k_current();
        if (tracker.k_current() >= 1) {
            DissipationSpec spec{params.gamma, params.d};
            BarrierReport barrier = barrier_check(spectrum, tracker, barrier_C, spec);
            rec.j_ku = barrier.j_ku;
            rec.barrier_breach = barrier.breach;
        }
        rec.b = sample.b;
        records.push_back(std::move(rec));
    }
    if (!records.empty()) records.back().diss_cum = traj.total_dissipation;
    return records;
}

DriverResult run_cascade_mode(const RunConfig& cfg, bool quiet, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    Eigen::ArrayXd initial = make_cascade_initial(cfg.cascade);
    CascadeTrajectory traj = integrate_cascade({initial, 0.0}, cfg.cascade.params,
                                               cfg.cascade.t_end, cfg.cascade.cadence);
    write_timeseries(join(cfg.out_dir, "cascade.csv"),
                     cascade_records(traj, cfg.cascade.params, cfg.barrier_C));

    DriverResult result;
    std::ostringstream summary;
    summary << (traj.blowup_suspect ? "blowup_suspect" : "completed") << " t=" << traj.t_final
            << " sup_c=" << traj.sup_c << " budget=" << traj.total_dissipation;
    if (traj.blowup_suspect) summary << " offending_shell=" << traj.offending_shell;
    result.summary = summary.str();
    result.exit_code = 0;
    if (!quiet) log << result.summary << "\n";
    return result;
}

DriverResult run_verify_mode(const RunConfig& cfg, bool quiet, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    VerificationConfig vcfg{cfg.solver.grid, cfg.solver.diss, cfg.verify_ensemble, cfg.seed};
    std::vector<CheckReport> checks = run_verification(vcfg);
    write_text_file(join(cfg.out_dir, "verification.json"),
                    verification_report_json(vcfg, checks));

    DriverResult result;
    std::ostringstream summary;
    summary << "verified " << checks.size() << " checks:";
    for (const CheckReport& rep : checks)
        summary << " " << rep.name << "=" << rep.fitted_constant;
    result.summary = summary.str();
    if (!quiet) log << result.summary << "\n";
    return result;
}

DriverResult run_sweep_mode(const RunConfig& cfg, bool quiet, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    Eigen::ArrayXd initial = make_cascade_initial(cfg.cascade);
    std::vector<SweepRow> rows;
    for (double gamma : cfg.sweep_gammas) {
        CascadeParams params = cfg.cascade.params;
        params.gamma = gamma;
        CascadeTrajectory traj =
            integrate_cascade({initial, 0.0}, params, cfg.cascade.t_end, cfg.cascade.cadence);
        rows.push_back({gamma, traj.sup_c, traj.blowup_suspect, traj.total_dissipation,
                        traj.t_final});

        std::ostringstream name;
        name << "sweep_gamma_" << gamma << ".csv";
        write_timeseries(join(cfg.out_dir, name.str()),
                         cascade_records(traj, params, cfg.barrier_C));
    }
    write_sweep_report(join(cfg.out_dir, "sweep.csv"), rows);

    DriverResult result;
    std::ostringstream summary;
    summary << "swept " << rows.size() << " gammas;";
    for (const SweepRow& row : rows)
        summary << " g=" << row.gamma << (row.blowup_suspect ? " blowup" : " ok");
    result.summary = summary.str();
    if (!quiet) log << result.summary << "\n";
    return result;
}

}  // namespace ssns
