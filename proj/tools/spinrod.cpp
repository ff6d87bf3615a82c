// spinrod: batch front end for the rotational jet spinning solver.
//
// Subcommands:
//   simulate  run one configuration to t_end, write CSV snapshots
//   steady    integrate until the steady residual falls below the threshold
//   converge  temporal/spatial self-convergence ladder, write converge.csv
//   sweep     run a list of configurations on a worker pool
//
// Exit codes: 0 success, 2 configuration error, 3 Newton failure,
// 4 steady threshold not reached.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinrod/spinrod.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNewton = 3;
constexpr int kExitNoSteady = 4;

/// Applies trailing `--key value` pairs as config overrides.
void apply_overrides(spinrod::RunConfig& cfg, const std::vector<std::string>& extras) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        std::string key = extras[i];
        if (key.rfind("--", 0) != 0)
            throw spinrod::ConfigError("expected --key, got: " + key);
        key = key.substr(2);
        if (i + 1 >= extras.size())
            throw spinrod::ConfigError("missing value for override --" + key);
        spinrod::apply_config_value(cfg, key, extras[++i]);
    }
}

spinrod::RunConfig load_config(const std::string& path,
                               const std::vector<std::string>& extras) {
    spinrod::RunConfig cfg = spinrod::parse_config_file(path);
    apply_overrides(cfg, extras);
    spinrod::validate_config(cfg);
    return cfg;
}

void print_stats(const spinrod::RunRecord& rec) {
    std::cout << "steps: " << rec.stats.steps
              << "  newton iterations: " << rec.stats.newton_iterations
              << "  worst step residual: " << spinrod::fp17(rec.stats.max_step_residual)
              << "\n";
    const auto& last = rec.snapshots.back();
    std::cout << "final time: " << spinrod::fp17(last.t)
              << "  cells: " << last.n_cells(rec.ncomp) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinrod: instationary viscous rod spinning solver"};
    app.require_subcommand(1);

    std::string config_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->allow_extras();
    };
    CLI::App* cmd_sim = app.add_subcommand("simulate", "run one configuration");
    CLI::App* cmd_steady = app.add_subcommand("steady", "integrate to the steady state");
    CLI::App* cmd_conv = app.add_subcommand("converge", "self-convergence study");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a list of configurations");
    for (auto* c : {cmd_sim, cmd_steady, cmd_conv}) add_common(c);
    cmd_sweep->add_option("--config", config_path, "sweep file (run = path lines)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (cmd_sim->parsed()) {
            const auto cfg = load_config(config_path, cmd_sim->remaining());
            const auto rec = spinrod::run_simulate(cfg);
            print_stats(rec);
            return kExitOk;
        }
        if (cmd_steady->parsed()) {
            const auto cfg = load_config(config_path, cmd_steady->remaining());
            const auto rec = spinrod::run_steady(cfg);
            print_stats(rec);
            std::cout << "steady residual: "
                      << spinrod::fp17(rec.stats.final_steady_residual) << "\n";
            if (!rec.stats.steady_reached) {
                std::cerr << "steady threshold " << cfg.steady_threshold
                          << " not reached before t_end\n";
                return kExitNoSteady;
            }
            std::cout << "steady state reached at t = "
                      << spinrod::fp17(rec.stats.steady_reached_time) << "\n";
            return kExitOk;
        }
        if (cmd_conv->parsed()) {
            const auto cfg = load_config(config_path, cmd_conv->remaining());
            const auto table = spinrod::run_converge(cfg);
            table.write_csv(std::cout);
            return kExitOk;
        }
        // sweep
        const auto sweep = spinrod::parse_sweep_file(config_path);
        const auto recs = spinrod::run_sweep(sweep);
        for (std::size_t k = 0; k < recs.size(); ++k) {
            std::cout << sweep.runs[k] << ": steps " << recs[k].stats.steps
                      << ", newton iterations " << recs[k].stats.newton_iterations
                      << "\n";
        }
        return kExitOk;
    } catch (const spinrod::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spinrod::StepFailure& e) {
        std::cerr << "time step failed: " << e.what() << "\n";
        return kExitNewton;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
