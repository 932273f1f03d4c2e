#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsb/environment.hpp"
#include "nsb/errors.hpp"
#include "nsb/lmdsee.hpp"
#include "nsb/regret.hpp"
#include "nsb/swucb.hpp"

// Experiment configuration: JSON file with explicit keys, every field
// optional with documented defaults. The policy tuning class ("tuning") may
// differ from the environment class; that is a legitimate robustness
// experiment and only produces a warning.

namespace nsb {

inline const std::vector<double>& default_mean_set() {
    static const std::vector<double> set = {0.05, 0.12, 0.19, 0.26, 0.33,
                                            0.39, 0.46, 0.53, 0.6,  0.9};
    return set;
}

struct ExperimentConfig {
    std::string policy = "lmdsee";       // lmdsee | swucbsharp | ucb | dsee | random
    std::string environment = "abrupt";  // abrupt | slow
    std::string tuning;                  // defaults to environment

    int N = 10;
    std::int64_t T = 100000;
    int replications = 20;
    std::uint64_t seed = 20260815ULL;

    double nu = 0.2;          // abrupt: breakpoint-density exponent
    double kappa = 0.5;       // slow: drift exponent
    double kappa_max = 1.0;   // slow tuning saturation, in (0, 4/3)
    std::optional<double> delta_min;  // defaults to the mean-set gap
    std::optional<double> a;          // abrupt (1, 0.25); slow (20, 1)
    std::optional<double> b;
    std::optional<double> lambda;     // abrupt 12.3; slow 4.3
    double w = 1.0;           // dsee baseline exploration weight

    double c = 4.0;           // Beta concentration
    double mean_clamp = 0.01;
    std::vector<double> mean_set = default_mean_set();
    double init_low = 0.1;
    double init_high = 0.9;

    std::string out_csv;
    std::string out_json;

    bool operator==(const ExperimentConfig&) const = default;
};

// True minimal gap of a permutation assignment from the set: best minus
// second-best value.
inline double default_delta_min(const std::vector<double>& mean_set) {
    if (mean_set.size() < 2) return 0.3;
    std::vector<double> s = mean_set;
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s[0] - s[1];
}

// Fill every defaulted field so emitted configs are self-contained.
inline ExperimentConfig normalize(ExperimentConfig cfg) {
    if (cfg.tuning.empty()) cfg.tuning = cfg.environment;
    const bool abrupt_tuning = cfg.tuning == "abrupt";
    if (!cfg.a) cfg.a = abrupt_tuning ? 1.0 : 20.0;
    if (!cfg.b) cfg.b = abrupt_tuning ? 0.25 : 1.0;
    if (!cfg.lambda) cfg.lambda = abrupt_tuning ? 12.3 : 4.3;
    if (!cfg.delta_min) cfg.delta_min = default_delta_min(cfg.mean_set);
    return cfg;
}

struct ResolvedExperiment {
    ExperimentConfig cfg;  // normalized
    LmDseeParams lmdsee;         // valid when policy == lmdsee
    SwUcbSharpParams swucb;      // valid when policy == swucbsharp
    double bound_exponent = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> warnings;

    bool has_bound_curve() const { return !std::isnan(bound_exponent); }
};

// Validate domains, apply tuning formulas, and surface configuration
// problems (including choose_l failures) before any replication runs.
inline ResolvedExperiment resolve(const ExperimentConfig& raw) {
    ResolvedExperiment rx;
    rx.cfg = normalize(raw);
    const ExperimentConfig& cfg = rx.cfg;

    static const std::vector<std::string> policies = {"lmdsee", "swucbsharp", "ucb",
                                                      "dsee", "random"};
    if (std::find(policies.begin(), policies.end(), cfg.policy) == policies.end())
        throw ConfigError("config: unknown policy '" + cfg.policy + "'");
    if (cfg.environment != "abrupt" && cfg.environment != "slow")
        throw ConfigError("config: unknown environment '" + cfg.environment + "'");
    if (cfg.tuning != "abrupt" && cfg.tuning != "slow")
        throw ConfigError("config: unknown tuning class '" + cfg.tuning + "'");
    if (cfg.N < 1) throw ConfigError("config: N must be positive");
    if (cfg.T < 1) throw ConfigError("config: T must be positive");
    if (cfg.T > 10000000LL) throw ConfigError("config: T capped at 1e7");
    if (cfg.replications < 1) throw ConfigError("config: replications must be positive");
    if (!(cfg.nu >= 0.0 && cfg.nu < 1.0)) throw ConfigError("config: nu must lie in [0,1)");
    if (!(cfg.kappa > 0.0)) throw ConfigError("config: kappa must be positive");
    if (!(cfg.c > 0.0)) throw ConfigError("config: reward concentration c must be positive");
    if (!(cfg.mean_clamp > 0.0 && cfg.mean_clamp < 0.5))
        throw ConfigError("config: mean_clamp must lie in (0, 0.5)");
    if (cfg.environment == "abrupt" &&
        static_cast<int>(cfg.mean_set.size()) < cfg.N)
        throw ConfigError("config: mean_set smaller than arm count");

    if (cfg.tuning != cfg.environment)
        rx.warnings.push_back("policy tuned for the '" + cfg.tuning +
                              "' class but running on the '" + cfg.environment +
                              "' environment");

    const bool abrupt_tuning = cfg.tuning == "abrupt";
    if (cfg.policy == "lmdsee") {
        rx.lmdsee = abrupt_tuning
                        ? lmdsee_configure_abrupt(cfg.N, cfg.nu, *cfg.delta_min,
                                                  *cfg.a, *cfg.b)
                        : lmdsee_configure_slow(cfg.N, cfg.kappa, cfg.kappa_max,
                                                *cfg.a, *cfg.b);
    } else if (cfg.policy == "swucbsharp") {
        rx.swucb.N = cfg.N;
        // Delta_min is accepted but unused by the selection rule.
        rx.swucb.alpha =
            abrupt_tuning ? (1.0 - cfg.nu) / 2.0 : std::min(1.0, 3.0 * cfg.kappa / 4.0);
        rx.swucb.lambda = *cfg.lambda;
        if (!(rx.swucb.alpha > 0.0 && rx.swucb.alpha <= 1.0))
            throw ConfigError("config: derived alpha outside (0,1]");
    } else if (cfg.policy == "dsee") {
        if (!(cfg.w > 0.0)) throw ConfigError("config: w must be positive");
    }

    // The order claim holds only when the policy is tuned for the class it
    // runs on; mistuned runs get the warning above and no bound curve.
    if (cfg.tuning == cfg.environment &&
        (cfg.policy == "lmdsee" || cfg.policy == "swucbsharp")) {
        rx.bound_exponent = resolve_bound_exponent(cfg.environment, cfg.policy, cfg.nu,
                                                   rx.lmdsee.rho, rx.swucb.alpha);
    }
    return rx;
}

inline nlohmann::json to_json(const ExperimentConfig& raw) {
    const ExperimentConfig cfg = normalize(raw);
    nlohmann::json j;
    j["policy"] = cfg.policy;
    j["environment"] = cfg.environment;
    j["tuning"] = cfg.tuning;
    j["N"] = cfg.N;
    j["T"] = cfg.T;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.seed;
    j["nu"] = cfg.nu;
    j["kappa"] = cfg.kappa;
    j["kappa_max"] = cfg.kappa_max;
    j["delta_min"] = *cfg.delta_min;
    j["a"] = *cfg.a;
    j["b"] = *cfg.b;
    j["lambda"] = *cfg.lambda;
    j["w"] = cfg.w;
    j["c"] = cfg.c;
    j["mean_clamp"] = cfg.mean_clamp;
    j["mean_set"] = cfg.mean_set;
    j["init_low"] = cfg.init_low;
    j["init_high"] = cfg.init_high;
    j["out_csv"] = cfg.out_csv;
    j["out_json"] = cfg.out_json;
    return j;
}

inline ExperimentConfig parse_config(const nlohmann::json& doc) {
    // Accept both raw config files and emitted result documents (which
    // embed the config under a "config" key).
    const nlohmann::json& src =
        (doc.is_object() && doc.contains("config") && doc["config"].is_object())
            ? doc["config"]
            : doc;
    if (!src.is_object()) throw ConfigError("config: document is not a JSON object");

    ExperimentConfig cfg;
    for (const auto& [key, val] : src.items()) {
        try {
            if (key == "policy") cfg.policy = val.get<std::string>();
            else if (key == "environment") cfg.environment = val.get<std::string>();
            else if (key == "tuning") cfg.tuning = val.get<std::string>();
            else if (key == "N") cfg.N = val.get<int>();
            else if (key == "T") cfg.T = val.get<std::int64_t>();
            else if (key == "replications") cfg.replications = val.get<int>();
            else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
            else if (key == "nu") cfg.nu = val.get<double>();
            else if (key == "kappa") cfg.kappa = val.get<double>();
            else if (key == "kappa_max") cfg.kappa_max = val.get<double>();
            else if (key == "delta_min") cfg.delta_min = val.get<double>();
            else if (key == "a") cfg.a = val.get<double>();
            else if (key == "b") cfg.b = val.get<double>();
            else if (key == "lambda") cfg.lambda = val.get<double>();
            else if (key == "w") cfg.w = val.get<double>();
            else if (key == "c") cfg.c = val.get<double>();
            else if (key == "mean_clamp") cfg.mean_clamp = val.get<double>();
            else if (key == "mean_set") cfg.mean_set = val.get<std::vector<double>>();
            else if (key == "init_low") cfg.init_low = val.get<double>();
            else if (key == "init_high") cfg.init_high = val.get<double>();
            else if (key == "out_csv") cfg.out_csv = val.get<std::string>();
            else if (key == "out_json") cfg.out_json = val.get<std::string>();
            else throw ConfigError("config: unknown key '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: bad value for key '" + key + "': " + e.what());
        }
    }
    return cfg;
}

// String-typed override used by CLI flags and sweep values.
inline void apply_override(ExperimentConfig& cfg, const std::string& key,
                           const std::string& value) {
    try {
        if (key == "policy") cfg.policy = value;
        else if (key == "environment") cfg.environment = value;
        else if (key == "tuning") cfg.tuning = value;
        else if (key == "out_csv") cfg.out_csv = value;
        else if (key == "out_json") cfg.out_json = value;
        else if (key == "N") cfg.N = std::stoi(value);
        else if (key == "T") cfg.T = std::stoll(value);
        else if (key == "replications") cfg.replications = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "nu") cfg.nu = std::stod(value);
        else if (key == "kappa") cfg.kappa = std::stod(value);
        else if (key == "kappa_max") cfg.kappa_max = std::stod(value);
        else if (key == "delta_min") cfg.delta_min = std::stod(value);
        else if (key == "a") cfg.a = std::stod(value);
        else if (key == "b") cfg.b = std::stod(value);
        else if (key == "lambda") cfg.lambda = std::stod(value);
        else if (key == "w") cfg.w = std::stod(value);
        else if (key == "c") cfg.c = std::stod(value);
        else if (key == "mean_clamp") cfg.mean_clamp = std::stod(value);
        else if (key == "init_low") cfg.init_low = std::stod(value);
        else if (key == "init_high") cfg.init_high = std::stod(value);
        else
            throw ConfigError("override: unknown or non-scalar parameter '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw ConfigError("override: cannot parse value '" + value + "' for '" + key + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("override: value '" + value + "' out of range for '" + key + "'");
    }
}

}  // namespace nsb
