#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ssns/cascade.hpp"
#include "ssns/diagnostics.hpp"
#include "ssns/solver.hpp"

namespace ssns {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint layout (little-endian):
//   magic "SSNS" | u32 version | u32 d | u32 n | f64 gamma | f64 t
//   | u64 step_count | f64 dt | payload
// payload: n * (n/2 + 1) coefficients, row-major over (ky index, kx index),
// each an (re, im) pair of 64-bit floats.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
    int d = 2;
    int n = 0;
    double gamma = 0.0;
    SolverState state;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

/// Time-series CSV. Header: t,energy,c,diss_cum,k_current,j_ku,
/// barrier_breach,b_0..b_jmax. Values are printed with 17 significant
/// digits so a read-back reproduces them exactly. Throws on empty input.
void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_timeseries(const std::string& path);

/// Sweep report CSV: gamma,sup_c,blowup_flag,total_dissipation,t_final.
void write_sweep_report(const std::string& path, const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ssns
