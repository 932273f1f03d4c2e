// Command-line front end: seeded simulation runs, parameter sweeps, and
// LM-DSEE schedule export.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime fault.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsb/nsb.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

nsb::ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw nsb::ConfigError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        f >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw nsb::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return nsb::parse_config(doc);
}

struct CliOverrides {
    std::string policy, env, out_csv, out_json;
    std::string T, reps, seed;  // kept as strings; applied via apply_override
};

void apply_cli_overrides(nsb::ExperimentConfig& cfg, const CliOverrides& ov) {
    if (!ov.policy.empty()) nsb::apply_override(cfg, "policy", ov.policy);
    if (!ov.env.empty()) nsb::apply_override(cfg, "environment", ov.env);
    if (!ov.T.empty()) nsb::apply_override(cfg, "T", ov.T);
    if (!ov.reps.empty()) nsb::apply_override(cfg, "replications", ov.reps);
    if (!ov.seed.empty()) nsb::apply_override(cfg, "seed", ov.seed);
    if (!ov.out_csv.empty()) cfg.out_csv = ov.out_csv;
    if (!ov.out_json.empty()) cfg.out_json = ov.out_json;
}

void print_warnings(const nsb::ResolvedExperiment& rx) {
    for (const auto& w : rx.warnings) std::cerr << "warning: " << w << "\n";
}

// Runs one experiment and writes whatever outputs are configured. Returns
// the process exit code (runtime fault when any replication failed).
int run_and_emit(const nsb::ExperimentConfig& cfg) {
    nsb::ResolvedExperiment rx = nsb::resolve(cfg);
    print_warnings(rx);
    nsb::ExperimentResult result = nsb::run_experiment(rx);

    nsb::BoundCurve curve;
    const nsb::BoundCurve* curve_ptr = nullptr;
    if (rx.has_bound_curve()) {
        curve = nsb::bound_ratio(result.agg, rx.cfg.environment, rx.bound_exponent);
        curve_ptr = &curve;
    }
    if (!rx.cfg.out_csv.empty()) nsb::emit_csv(result.agg, curve_ptr, rx.cfg.out_csv);
    if (!rx.cfg.out_json.empty()) nsb::emit_json(rx, result, curve_ptr, rx.cfg.out_json);

    std::ostringstream line;
    line << "policy=" << rx.cfg.policy << " env=" << rx.cfg.environment
         << " T=" << rx.cfg.T << " reps=" << rx.cfg.replications
         << " seed=" << rx.cfg.seed
         << " final_mean_regret=" << nsb::fmt9(result.agg.mean.back())
         << " final_std_regret=" << nsb::fmt9(result.agg.stddev.back());
    if (curve_ptr) line << " final_bound_ratio=" << nsb::fmt9(curve.value.back());
    std::cout << line.str() << "\n";

    if (result.failed_count > 0) {
        std::cerr << "error: " << result.failed_count << " replication(s) failed";
        for (const auto& rec : result.records)
            if (rec.failed) {
                std::cerr << " (replication " << rec.replication << ": " << rec.error << ")";
                break;
            }
        std::cerr << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

std::string suffixed_path(const std::string& path, const std::string& param,
                          const std::string& value) {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t dot = path.find_last_of('.');
    const std::string tag = "_" + param + "_" + value;
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

std::vector<std::string> split_values(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-stationary bandit simulation harness"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides ov;

    CLI::App* simulate = app.add_subcommand("simulate", "run one seeded experiment");
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--policy", ov.policy, "policy override");
    simulate->add_option("--env", ov.env, "environment override");
    simulate->add_option("--T", ov.T, "horizon override");
    simulate->add_option("--reps", ov.reps, "replication-count override");
    simulate->add_option("--seed", ov.seed, "master seed override");
    simulate->add_option("--out-csv", ov.out_csv, "aggregate curve CSV path");
    simulate->add_option("--out-json", ov.out_json, "provenance JSON path");
    std::string dump_means;
    simulate->add_option("--dump-means", dump_means,
                         "write replication-0 ground-truth means as t,j,mu CSV");

    CLI::App* sweep = app.add_subcommand("sweep", "one experiment per parameter value");
    std::string sweep_param, sweep_values;
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--param", sweep_param, "config key to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI::App* trajectory = app.add_subcommand("trajectory", "export the LM-DSEE phase schedule");
    std::string traj_out;
    trajectory->add_option("--config", config_path, "JSON config file")->required();
    trajectory->add_option("--out", traj_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) {
            nsb::ExperimentConfig cfg = load_config_file(config_path);
            apply_cli_overrides(cfg, ov);
            if (!dump_means.empty()) {
                nsb::ResolvedExperiment rx = nsb::resolve(cfg);
                nsb::dump_mean_matrix(nsb::replication_environment(rx, 0), dump_means);
            }
            return run_and_emit(cfg);
        }
        if (sweep->parsed()) {
            const nsb::ExperimentConfig base = load_config_file(config_path);
            const std::vector<std::string> values = split_values(sweep_values);
            if (values.empty()) throw nsb::ConfigError("sweep: --values is empty");
            int rc = kExitOk;
            for (const auto& v : values) {
                nsb::ExperimentConfig cfg = base;
                nsb::apply_override(cfg, sweep_param, v);
                if (!cfg.out_csv.empty()) cfg.out_csv = suffixed_path(cfg.out_csv, sweep_param, v);
                if (!cfg.out_json.empty())
                    cfg.out_json = suffixed_path(cfg.out_json, sweep_param, v);
                std::cout << sweep_param << "=" << v << " ";
                rc = std::max(rc, run_and_emit(cfg));
            }
            return rc;
        }
        if (trajectory->parsed()) {
            nsb::ExperimentConfig cfg = load_config_file(config_path);
            nsb::ResolvedExperiment rx = nsb::resolve(cfg);
            if (cfg.policy != "lmdsee")
                throw nsb::ConfigError("trajectory: requires an lmdsee policy configuration");
            print_warnings(rx);
            nsb::emit_trajectory(nsb::lmdsee_trajectory(rx.lmdsee, cfg.T), traj_out);
            return kExitOk;
        }
    } catch (const nsb::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
