#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nsb/config.hpp"
#include "nsb/environment.hpp"
#include "nsb/experiment.hpp"
#include "nsb/regret.hpp"

// Output emission. CSV carries the aggregate curves (9 significant digits,
// LF endings); JSON is the provenance record: resolved config, derived
// tuning, seeds, per-replication records, and summary statistics. An emitted
// JSON document can be fed back in as a config file to reproduce the run.

namespace nsb {

inline std::string fmt9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void emit_csv(const AggregateTrace& agg, const BoundCurve* curve,
                     const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
    f << "t,mean_regret,std_regret,bound_ratio\n";
    for (std::size_t i = 0; i < agg.mean.size(); ++i) {
        f << (i + 1) << ',' << fmt9(agg.mean[i]) << ',' << fmt9(agg.stddev[i]) << ','
          << fmt9(curve ? curve->value[i]
                        : std::numeric_limits<double>::quiet_NaN())
          << '\n';
    }
    if (!f.good()) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline nlohmann::json result_document(const ResolvedExperiment& rx,
                                      const ExperimentResult& result,
                                      const BoundCurve* curve) {
    nlohmann::json doc;
    doc["config"] = to_json(rx.cfg);

    nlohmann::json derived;
    if (rx.cfg.policy == "lmdsee") {
        derived["rho"] = rx.lmdsee.rho;
        derived["l"] = rx.lmdsee.l;
        derived["gamma_rule"] = rx.lmdsee.slow_gamma ? "slow" : "fixed";
        if (!rx.lmdsee.slow_gamma) derived["gamma"] = rx.lmdsee.gamma;
    } else if (rx.cfg.policy == "swucbsharp") {
        derived["alpha"] = rx.swucb.alpha;
        derived["lambda"] = rx.swucb.lambda;
    } else if (rx.cfg.policy == "dsee") {
        derived["w"] = rx.cfg.w;
    }
    if (rx.has_bound_curve()) derived["bound_exponent"] = rx.bound_exponent;
    doc["derived"] = derived;

    nlohmann::json seeds;
    seeds["master"] = rx.cfg.seed;
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& rec : result.records) reps.push_back(rec.seed);
    seeds["replications"] = reps;
    doc["seeds"] = seeds;

    nlohmann::json runs = nlohmann::json::array();
    for (const auto& rec : result.records) {
        nlohmann::json r;
        r["index"] = rec.replication;
        r["seed"] = rec.seed;
        r["failed"] = rec.failed;
        if (rec.failed) {
            r["error"] = rec.error;
        } else {
            r["final_regret"] = rec.final_regret;
            r["arm_digest"] = hex64(rec.arm_digest);
        }
        runs.push_back(r);
    }
    doc["replications"] = runs;

    nlohmann::json summary;
    summary["horizon"] = rx.cfg.T;
    summary["replications"] = result.records.size();
    summary["failed"] = result.failed_count;
    summary["final_mean_regret"] = result.agg.mean.back();
    summary["final_std_regret"] = result.agg.stddev.back();
    if (curve && !curve->value.empty() && !std::isnan(curve->value.back())) {
        summary["final_bound_ratio"] = curve->value.back();
        summary["bound_exponent"] = curve->exponent;
    }
    doc["summary"] = summary;
    return doc;
}

inline void emit_json(const ResolvedExperiment& rx, const ExperimentResult& result,
                      const BoundCurve* curve, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_json: cannot open '" + path + "'");
    f << result_document(rx, result, curve).dump(2) << '\n';
    if (!f.good()) throw std::runtime_error("emit_json: write failed for '" + path + "'");
}

inline void dump_mean_matrix(const MeanMatrix& mm, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("dump_mean_matrix: cannot open '" + path + "'");
    f << "t,j,mu\n";
    for (std::int64_t t = 1; t <= mm.horizon(); ++t)
        for (int j = 1; j <= mm.arm_count(); ++j)
            f << t << ',' << j << ',' << fmt9(mm.at(t, j)) << '\n';
    if (!f.good())
        throw std::runtime_error("dump_mean_matrix: write failed for '" + path + "'");
}

// Phase schedule export for LM-DSEE configurations.
inline void emit_trajectory(const std::vector<PhaseSpan>& spans, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_trajectory: cannot open '" + path + "'");
    f << "epoch,phase,t_start,t_end\n";
    for (const auto& s : spans)
        f << s.epoch << ',' << (s.phase == Phase::Explore ? "explore" : "exploit") << ','
          << s.t_start << ',' << s.t_end << '\n';
    if (!f.good())
        throw std::runtime_error("emit_trajectory: write failed for '" + path + "'");
}

}  // namespace nsb
