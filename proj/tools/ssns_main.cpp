#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssns/driver.hpp"

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    std::string checkpoint_path;
    long long seed = -1;
    bool quiet = false;
};

ssns::RunConfig load(const GlobalOpts& opts, ssns::RunMode expected) {
    ssns::RunConfig cfg = ssns::load_config(opts.config_path);
    if (cfg.mode != expected)
        throw ssns::ConfigError("config mode is \"" + ssns::to_string(cfg.mode) +
                                "\" but the \"" + ssns::to_string(expected) +
                                "\" command was requested");
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(opts.seed);
        cfg.init.seed = cfg.seed;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slightly supercritical Navier-Stokes laboratory"};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--config", opts.config_path, "run configuration file")->required();
    app.add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
    app.add_option("--seed", opts.seed, "seed override");
    app.add_flag("--quiet", opts.quiet, "suppress progress output");

    auto* simulate = app.add_subcommand("simulate", "integrate the 2-d vorticity equation");
    auto* cascade = app.add_subcommand("cascade", "integrate the dyadic shell model");
    auto* verify = app.add_subcommand("verify", "run the inequality verification suite");
    auto* sweep = app.add_subcommand("sweep", "run the cascade over a list of gammas");
    auto* resume = app.add_subcommand("resume", "continue a simulate run from a checkpoint");
    resume->add_option("--checkpoint", opts.checkpoint_path, "checkpoint file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ssns::DriverResult result;
        if (simulate->parsed())
            result = ssns::run_simulate(load(opts, ssns::RunMode::simulate), opts.quiet, std::cout);
        else if (cascade->parsed())
            result = ssns::run_cascade_mode(load(opts, ssns::RunMode::cascade), opts.quiet,
                                            std::cout);
        else if (verify->parsed())
            result = ssns::run_verify_mode(load(opts, ssns::RunMode::verify), opts.quiet,
                                           std::cout);
        else if (sweep->parsed())
            result = ssns::run_sweep_mode(load(opts, ssns::RunMode::sweep), opts.quiet, std::cout);
        else if (resume->parsed())
            result = ssns::run_resume(load(opts, ssns::RunMode::simulate), opts.checkpoint_path,
                                      opts.quiet, std::cout);
        return result.exit_code;
    } catch (const ssns::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ssns::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
