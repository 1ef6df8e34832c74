// orbitforge command-line front end: run scenarios from YAML configs,
// inspect execution order, validate configs, and launch Monte Carlo
// ensembles.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 runtime failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orbitforge/config.hpp"
#include "orbitforge/errors.hpp"
#include "orbitforge/exporters.hpp"
#include "orbitforge/log.hpp"
#include "orbitforge/monte_carlo.hpp"
#include "orbitforge/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
    std::string config_path;
    std::string kind = "basicOrbit";
    std::string mode;
    std::optional<double> stop_s;
    std::optional<std::int64_t> num_points;
    std::string csv_path;
    std::string jsonl_path;
    std::string plot_path;
};

struct McOptions {
    std::string config_path;
    std::string kind = "basicOrbit";
    int runs = 1;
    std::string archive = "monte_carlo_results";
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<std::string> dispersions;
    bool force = false;
};

orbitforge::ScenarioConfig load_with_warnings(const std::string& path) {
    orbitforge::ScenarioConfig config = orbitforge::load_config_file(path);
    for (const std::string& warning : config.warnings) {
        orbitforge::log_warn(path + ": " + warning);
    }
    return config;
}

int cmd_run(const RunOptions& opt) {
    const orbitforge::ScenarioConfig config = load_with_warnings(opt.config_path);
    const orbitforge::ScenarioKind kind = orbitforge::parse_scenario_kind(opt.kind);

    orbitforge::ScenarioConfig effective = config;
    if (opt.num_points) {
        effective.simulation.num_data_points = *opt.num_points;
    }

    std::optional<orbitforge::FswMode> mode;
    if (!opt.mode.empty()) {
        mode = orbitforge::parse_fsw_mode(opt.mode);
    }
    const double stop_s = opt.stop_s.value_or(effective.simulation.simulation_time_s);

    const auto scenario = orbitforge::build_scenario(effective, kind);
    orbitforge::log_info("running " + opt.kind + " for " + std::to_string(stop_s) + " s");
    const orbitforge::OutputBundle outputs =
        scenario->run(mode, orbitforge::sec_to_nanos(stop_s));

    if (!opt.csv_path.empty()) {
        orbitforge::export_state_csv(outputs, opt.csv_path);
        orbitforge::log_info("wrote " + opt.csv_path);
    }
    if (!opt.jsonl_path.empty()) {
        orbitforge::export_telemetry_jsonl(*scenario, opt.jsonl_path);
        orbitforge::log_info("wrote " + opt.jsonl_path);
    }
    if (!opt.plot_path.empty()) {
        orbitforge::PlotSpec plot;
        if (scenario->has_fsw()) {
            plot.title = "attitude tracking error";
            plot.y_label = "sigma_BR";
            orbitforge::emit_svg_plot(outputs.at("sigma_BR"), opt.plot_path, plot);
        } else {
            plot.title = "inertial position";
            plot.y_label = "r_BN_N [m]";
            orbitforge::emit_svg_plot(outputs.at("r_BN_N"), opt.plot_path, plot);
        }
        orbitforge::log_info("wrote " + opt.plot_path);
    }

    const std::size_t samples = scenario->state_recorder().sample_count();
    if (scenario->has_fsw()) {
        const orbitforge::TimeSeries& sigma_br = outputs.at("sigma_BR");
        double final_norm = 0.0;
        if (sigma_br.row_count() > 0) {
            const std::size_t last = sigma_br.row_count() - 1;
            final_norm = std::sqrt(sigma_br.values[0][last] * sigma_br.values[0][last] +
                                   sigma_br.values[1][last] * sigma_br.values[1][last] +
                                   sigma_br.values[2][last] * sigma_br.values[2][last]);
        }
        std::printf("run complete: t_final=%.3f s, samples=%zu, |sigma_BR|=%.6e\n", stop_s,
                    samples, final_norm);
    } else {
        std::printf("run complete: t_final=%.3f s, samples=%zu\n", stop_s, samples);
    }
    return kExitOk;
}

int cmd_mc(const McOptions& opt) {
    orbitforge::McPlan plan;
    plan.base_config = load_with_warnings(opt.config_path);
    plan.kind = orbitforge::parse_scenario_kind(opt.kind);
    plan.execution_count = opt.runs;
    plan.archive_dir = opt.archive;
    plan.master_seed = opt.seed;
    plan.workers = opt.workers;
    plan.force = opt.force;
    for (const std::string& text : opt.dispersions) {
        plan.dispersions.push_back(orbitforge::parse_dispersion(text));
    }

    const orbitforge::McArchive archive = orbitforge::execute_simulations(plan);
    int failed = 0;
    for (const orbitforge::McRunResult& run : archive.runs) {
        std::printf("run %03d: %s%s%s\n", run.index, run.status.c_str(),
                    run.error.empty() ? "" : " - ", run.error.c_str());
        if (run.status != "ok") {
            ++failed;
        }
    }
    std::printf("manifest: %s\n", orbitforge::manifest_path(archive.dir).c_str());
    if (failed > 0) {
        orbitforge::log_warn(std::to_string(failed) + " of " +
                             std::to_string(archive.runs.size()) + " runs failed");
    }
    return kExitOk;
}

int cmd_exec_order(const std::string& config_path, const std::string& kind_name) {
    const orbitforge::ScenarioConfig config = load_with_warnings(config_path);
    const auto scenario =
        orbitforge::build_scenario(config, orbitforge::parse_scenario_kind(kind_name));
    std::printf("%s", scenario->container().show_execution_order().c_str());
    for (const std::string& orphan : scenario->orphan_modules()) {
        orbitforge::log_warn("module '" + orphan + "' is registered but assigned to no task");
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path, const std::string& kind_name) {
    orbitforge::ScenarioConfig config;
    try {
        std::ifstream in(config_path);
        if (!in) {
            throw orbitforge::ConfigError("cannot open config file '" + config_path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        config = orbitforge::parse_config(text.str());
    } catch (const std::exception& e) {
        std::printf("invalid: %s\n", e.what());
        return kExitConfig;
    }
    for (const std::string& warning : config.warnings) {
        std::printf("warning: %s\n", warning.c_str());
    }
    const std::vector<std::string> violations = orbitforge::validate_config(config);
    for (const std::string& violation : violations) {
        std::printf("invalid: %s\n", violation.c_str());
    }
    if (!violations.empty()) {
        return kExitConfig;
    }

    if (!kind_name.empty()) {
        // Wire the scenario to lint module registration as well.
        try {
            const auto scenario = orbitforge::build_scenario(
                config, orbitforge::parse_scenario_kind(kind_name));
            for (const std::string& orphan : scenario->orphan_modules()) {
                std::printf("warning: module '%s' is registered but assigned to no task\n",
                            orphan.c_str());
            }
        } catch (const std::exception& e) {
            std::printf("invalid: %s\n", e.what());
            return kExitConfig;
        }
    }
    std::printf("valid: %s\n", config_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitforge - modular spacecraft GN&C simulation"};
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "build and execute a scenario from a YAML config");
    run->add_option("config", run_opt.config_path, "scenario YAML config")->required();
    run->add_option("--kind", run_opt.kind,
                    "scenario kind: basicOrbit|earthOrbit|sunEarth|attitudeControl");
    run->add_option("--mode", run_opt.mode, "FSW mode: standby|inertialPoint|hillPoint");
    run->add_option("--stop-s", run_opt.stop_s, "override stop time, seconds");
    run->add_option("--num-points", run_opt.num_points, "override num_data_points");
    run->add_option("--csv", run_opt.csv_path, "write the state CSV here");
    run->add_option("--jsonl", run_opt.jsonl_path, "write JSON-lines telemetry here");
    run->add_option("--plot", run_opt.plot_path, "write an SVG plot here");

    McOptions mc_opt;
    CLI::App* mc = app.add_subcommand("mc", "run a Monte Carlo ensemble");
    mc->add_option("config", mc_opt.config_path, "scenario YAML config")->required();
    mc->add_option("--kind", mc_opt.kind, "scenario kind");
    mc->add_option("--runs", mc_opt.runs, "execution count");
    mc->add_option("--archive", mc_opt.archive, "archive directory");
    mc->add_option("--seed", mc_opt.seed, "master seed");
    mc->add_option("--workers", mc_opt.workers, "worker thread count");
    mc->add_option("--disperse", mc_opt.dispersions,
                   "dispersion spec kind:target:params (repeatable)");
    mc->add_flag("--force", mc_opt.force, "overwrite an existing archive directory");

    std::string exec_config, exec_kind = "basicOrbit";
    CLI::App* exec_order =
        app.add_subcommand("exec-order", "print the scenario execution-order tree");
    exec_order->add_option("config", exec_config, "scenario YAML config")->required();
    exec_order->add_option("--kind", exec_kind, "scenario kind");

    std::string validate_config_path, validate_kind;
    CLI::App* validate = app.add_subcommand("validate", "validate a YAML config");
    validate->add_option("config", validate_config_path, "scenario YAML config")->required();
    validate->add_option("--kind", validate_kind,
                         "also build this scenario kind and lint module registration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(run_opt);
        }
        if (mc->parsed()) {
            return cmd_mc(mc_opt);
        }
        if (exec_order->parsed()) {
            return cmd_exec_order(exec_config, exec_kind);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_config_path, validate_kind);
        }
    } catch (const orbitforge::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}
