#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssns/cascade.hpp"
#include "ssns/solver.hpp"

namespace ssns {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { simulate, cascade, verify, sweep };

std::string to_string(RunMode mode);

enum class InitFamily { taylor_green, random_smooth, random_shell };

struct InitSpec {
    InitFamily family = InitFamily::random_smooth;
    std::uint64_t seed = 1;
    double energy = 1.0;  // target ||u_0||_{L2}
    int shell = 3;        // random_shell
    double kpeak = 4.0;   // random_smooth envelope peak
};

enum class CascadeInitFamily { single_shell, geometric };

struct CascadeRunSpec {
    CascadeParams params;
    CascadeInitFamily init_family = CascadeInitFamily::single_shell;
    int init_shell = 3;
    double init_value = 1.0;
    double init_ratio = 0.5;
    double t_end = 5.0;
    double cadence = 0.05;
};

/// Validated contents of a run configuration file. The file format is
/// strict `key = value` lines with `#` comments; unknown keys are errors.
struct RunConfig {
    RunMode mode = RunMode::simulate;
    std::uint64_t seed = 1;
    std::string out_dir = ".";

    SolverConfig solver;
    InitSpec init;
    double barrier_C = 2.0;

    CascadeRunSpec cascade;
    std::vector<double> sweep_gammas = {0.0, 0.0625, 0.125, 0.25, 0.5, 1.0};
    int verify_ensemble = 100;
};

/// Parses and validates a config file. Errors carry the offending key path;
/// unknown keys are rejected with the nearest valid key named.
RunConfig load_config(const std::string& path);

/// Same, from config text (used by tests).
RunConfig parse_config(const std::string& text);

/// Builds the initial vorticity named by the config.
SpectralField make_initial_vorticity(const Grid& g, const InitSpec& init);

/// Builds the initial shell vector for cascade/sweep runs.
Eigen::ArrayXd make_cascade_initial(const CascadeRunSpec& spec);

}  // namespace ssns
