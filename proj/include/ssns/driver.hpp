#pragma once

#include <iosfwd>
#include <string>

#include "ssns/config.hpp"
#include "ssns/io.hpp"

namespace ssns {

// Top-level entry points shared by the CLI and the acceptance harness.
// Every output is a deterministic function of (config, seed).

struct DriverResult {
    int exit_code = 0;          // 0 ok, 3 numerical abort
    std::string summary;        // one-line human summary
    RunReport report;           // simulate/resume only
};

/// mode = simulate: writes timeseries.csv and final.ckpt into out_dir.
DriverResult run_simulate(const RunConfig& cfg, bool quiet, std::ostream& log);

/// Continues a checkpointed run to solver.t_end. Diagnostic accumulators
/// restart at the checkpoint; the field trajectory continues bit-for-bit.
DriverResult run_resume(const RunConfig& cfg, const std::string& checkpoint_path, bool quiet,
                        std::ostream& log);

/// mode = cascade: writes cascade.csv (same schema as the solver series).
DriverResult run_cascade_mode(const RunConfig& cfg, bool quiet, std::ostream& log);

/// mode = verify: writes verification.json.
DriverResult run_verify_mode(const RunConfig& cfg, bool quiet, std::ostream& log);

/// mode = sweep: writes sweep.csv plus one trajectory file per gamma.
DriverResult run_sweep_mode(const RunConfig& cfg, bool quiet, std::ostream& log);

/// Cascade trajectory samples rendered as diagnostics records (energy and
/// budget in b-form), so cascade runs share the CSV schema.
std::vector<DiagnosticsRecord> cascade_records(const CascadeTrajectory& traj,
                                               const CascadeParams& params, double barrier_C);

}  // namespace ssns
