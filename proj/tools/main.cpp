#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lagvac/config.hpp"
#include "lagvac/runner.hpp"

namespace {

// Output precedence: LAGVAC_OUT env, then --out, then the config file.
void apply_out_override(lagvac::RunConfig& cfg, const std::string& flag_out) {
    if (!flag_out.empty()) cfg.out_dir = flag_out;
    if (const char* env = std::getenv("LAGVAC_OUT")) {
        if (*env) cfg.out_dir = env;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lagvac: Lagrangian solver and verification harness for a viscous liquid-gas model with vacuum"};
    app.require_subcommand(1);

    std::string config_path, out_dir, grid_spec, run_dir;
    int jobs = 0;
    long seed = -1;

    CLI::App* run_cmd = app.add_subcommand("run", "simulate one configuration and fit the mass decay");
    run_cmd->add_option("--config", config_path, "config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory override");
    run_cmd->add_option("--seed", seed, "seed override");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a gamma/beta parameter grid");
    sweep_cmd->add_option("--config", config_path, "template config file")->required();
    sweep_cmd->add_option("--grid", grid_spec, "grid, e.g. \"gamma=2:2.5,beta=0.5:1\"")->required();
    sweep_cmd->add_option("--jobs", jobs, "parallel cells (default: hardware)");
    sweep_cmd->add_option("--out", out_dir, "output root override");
    sweep_cmd->add_option("--seed", seed, "seed override");

    CLI::App* verify_cmd = app.add_subcommand("verify", "re-check the invariants of a finished run directory");
    verify_cmd->add_option("dir", run_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            return lagvac::cmd_verify(run_dir);
        }
        lagvac::RunConfig cfg = lagvac::load_config(config_path);
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        apply_out_override(cfg, out_dir);
        if (run_cmd->parsed()) {
            return lagvac::cmd_run(cfg);
        }
        return lagvac::cmd_sweep(cfg, grid_spec, jobs, cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
