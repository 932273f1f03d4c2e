#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nsb/baselines.hpp"
#include "nsb/config.hpp"
#include "nsb/environment.hpp"
#include "nsb/lmdsee.hpp"
#include "nsb/regret.hpp"
#include "nsb/rng.hpp"
#include "nsb/swucb.hpp"

// Seeded Monte-Carlo execution. Replication m draws its own stream from
// (master seed, m), split further into an environment substream and a
// run substream, so every policy sees the same environment realization for
// a given (seed, replication) and results are bit-identical regardless of
// how many worker threads execute the replications.

namespace nsb {

struct RunRecord {
    int replication = 0;
    std::uint64_t seed = 0;
    std::uint64_t arm_digest = 0;  // FNV-1a over the pulled-arm sequence
    double final_regret = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
    std::string error;
};

struct ExperimentResult {
    AggregateTrace agg;
    std::vector<RunRecord> records;
    int failed_count = 0;
};

namespace detail {

inline std::unique_ptr<Policy> make_policy(const ResolvedExperiment& rx, Rng* run_rng) {
    const ExperimentConfig& cfg = rx.cfg;
    if (cfg.policy == "lmdsee") return std::make_unique<LmDsee>(rx.lmdsee);
    if (cfg.policy == "swucbsharp") return std::make_unique<SwUcbSharp>(rx.swucb);
    if (cfg.policy == "ucb") return std::make_unique<Ucb>(cfg.N);
    if (cfg.policy == "dsee") return std::make_unique<DseeBaseline>(cfg.N, cfg.w);
    if (cfg.policy == "random") return std::make_unique<RandomPolicy>(cfg.N, run_rng);
    throw ConfigError("make_policy: unknown policy '" + cfg.policy + "'");
}

inline MeanMatrix make_environment(const ExperimentConfig& cfg, Rng& env_rng) {
    if (cfg.environment == "abrupt") {
        AbruptConfig ec;
        ec.nu = cfg.nu;
        ec.mean_set = cfg.mean_set;
        ec.T = cfg.T;
        ec.N = cfg.N;
        return gen_abrupt_means(ec, env_rng);
    }
    SlowConfig ec;
    ec.kappa = cfg.kappa;
    ec.T = cfg.T;
    ec.N = cfg.N;
    ec.init_low = cfg.init_low;
    ec.init_high = cfg.init_high;
    return gen_slow_means(ec, env_rng);
}

}  // namespace detail

// The environment realization of replication `rep` under this config,
// independent of the policy (exportable as t,j,mu).
inline MeanMatrix replication_environment(const ResolvedExperiment& rx, int rep) {
    const std::uint64_t seed = derive_seed(rx.cfg.seed, static_cast<std::uint64_t>(rep));
    Rng env_rng(derive_seed(seed, 0));
    return detail::make_environment(rx.cfg, env_rng);
}

inline std::pair<RegretTrace, RunRecord> run_single_replication(
    const ResolvedExperiment& rx, int rep) {
    const ExperimentConfig& cfg = rx.cfg;
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(rep));
    Rng env_rng(derive_seed(seed, 0));
    Rng run_rng(derive_seed(seed, 1));

    const MeanMatrix mm = detail::make_environment(cfg, env_rng);
    const RewardModel model{cfg.c, cfg.mean_clamp};
    std::unique_ptr<Policy> policy = detail::make_policy(rx, &run_rng);

    RegretTrace trace;
    trace.reserve(static_cast<std::size_t>(cfg.T));
    std::uint64_t digest = 14695981039346656037ULL;
    for (std::int64_t t = 1; t <= cfg.T; ++t) {
        const int arm = policy->select(t);
        digest = (digest ^ static_cast<std::uint64_t>(arm)) * 1099511628211ULL;
        const double reward = sample_reward(mm.at(t, arm), model, run_rng);
        policy->record(t, arm, reward);
        trace.push(instantaneous_regret(mm, t, arm));
    }

    RunRecord rec;
    rec.replication = rep;
    rec.seed = seed;
    rec.arm_digest = digest;
    rec.final_regret = trace.R.back();
    return {std::move(trace), rec};
}

inline int replication_threads(int replications) {
    int n = 0;
    if (const char* env = std::getenv("NSB_THREADS")) {
        n = std::atoi(env);
        if (n < 1) n = 1;
    } else {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
    }
    return std::min(n, replications);
}

// Runs all replications (possibly concurrently) and merges results in
// replication-index order. Replications that throw are reported in their
// RunRecord and excluded from the aggregate.
inline ExperimentResult run_experiment(const ResolvedExperiment& rx) {
    const int M = rx.cfg.replications;
    std::vector<RegretTrace> traces(M);
    ExperimentResult result;
    result.records.assign(M, RunRecord{});

    const int workers = replication_threads(M);
    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int m = next.fetch_add(1);
            if (m >= M) return;
            try {
                auto [trace, rec] = run_single_replication(rx, m);
                traces[m] = std::move(trace);
                result.records[m] = rec;
            } catch (const std::exception& e) {
                RunRecord rec;
                rec.replication = m;
                rec.seed = derive_seed(rx.cfg.seed, static_cast<std::uint64_t>(m));
                rec.failed = true;
                rec.error = e.what();
                result.records[m] = rec;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<RegretTrace> ok;
    ok.reserve(M);
    for (int m = 0; m < M; ++m) {
        if (result.records[m].failed) {
            ++result.failed_count;
        } else {
            ok.push_back(std::move(traces[m]));
        }
    }
    if (ok.empty())
        throw std::runtime_error("run_experiment: every replication failed (first error: " +
                                 result.records.front().error + ")");
    result.agg = aggregate(ok);
    return result;
}

}  // namespace nsb
