#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsb/errors.hpp"
#include "nsb/numeric.hpp"
#include "nsb/rng.hpp"

// Non-stationary environment models.
//
// Abruptly changing: arm means are piecewise constant and jump at the
// breakpoints of floor(t^nu), each segment drawing N distinct means
// (a permutation prefix) from a fixed set.
//
// Slowly varying: each arm mean performs an independent random walk with
// per-step drift uniform on [-2 T^-kappa, 2 T^-kappa], clipped to [0,1].
//
// Rewards are Beta with mean mu and concentration c: Beta(c mu', c(1-mu')),
// mu' = clip(mu, clamp, 1-clamp), so support stays in [0,1].

namespace nsb {

// Ground-truth mean table mu_j(t); arms j in {1..N}, times t in {1..T}.
// Treat as immutable once generated.
class MeanMatrix {
public:
    MeanMatrix(int arm_count, std::int64_t horizon)
        : N_(arm_count), T_(horizon) {
        if (arm_count < 1) throw ConfigError("MeanMatrix: arm count must be positive");
        if (horizon < 1) throw ConfigError("MeanMatrix: horizon must be positive");
        mu_.assign(static_cast<std::size_t>(arm_count) * static_cast<std::size_t>(horizon), 0.0);
    }

    int arm_count() const { return N_; }
    std::int64_t horizon() const { return T_; }

    double at(std::int64_t t, int j) const {
        assert(t >= 1 && t <= T_ && j >= 1 && j <= N_);
        return mu_[static_cast<std::size_t>(t - 1) * N_ + (j - 1)];
    }
    double& at(std::int64_t t, int j) {
        assert(t >= 1 && t <= T_ && j >= 1 && j <= N_);
        return mu_[static_cast<std::size_t>(t - 1) * N_ + (j - 1)];
    }

private:
    int N_;
    std::int64_t T_;
    std::vector<double> mu_;
};

struct AbruptConfig {
    double nu = 0.0;                // breakpoint-density exponent, in [0,1)
    std::vector<double> mean_set;   // distinct values in (0,1), size >= N
    std::int64_t T = 0;
    int N = 0;
};

struct SlowConfig {
    double kappa = 1.0;             // drift exponent, > 0
    std::int64_t T = 0;
    int N = 0;
    double init_low = 0.1;
    double init_high = 0.9;
};

struct RewardModel {
    double c = 4.0;                 // Beta concentration (sum of shapes)
    double mean_clamp = 0.01;       // distance from {0,1} at which mu is clamped
};

struct GapSummary {
    std::vector<double> delta_j;    // per-arm maximal gap
    double delta_max = 0.0;
    double delta_min = 0.0;
};

// Times t in {2..T} where floor(t^nu) differs from floor((t-1)^nu).
inline std::vector<std::int64_t> breakpoints(double nu, std::int64_t T) {
    if (!(nu >= 0.0 && nu < 1.0)) throw ConfigError("breakpoints: nu must lie in [0,1)");
    if (T < 1) throw ConfigError("breakpoints: T must be positive");
    std::vector<std::int64_t> out;
    long long prev = 1;  // floor(1^nu)
    for (std::int64_t t = 2; t <= T; ++t) {
        const long long cur = floor_tol(std::pow(static_cast<double>(t), nu));
        if (cur != prev) out.push_back(t);
        prev = cur;
    }
    return out;
}

namespace detail {

// Draw-without-replacement prefix: uniformly random distinct assignment of
// pool values to arms 1..N (partial Fisher-Yates).
inline void permutation_prefix(const std::vector<double>& set, int N, Rng& rng,
                               std::vector<double>& out) {
    std::vector<double> pool = set;
    out.resize(N);
    for (int j = 0; j < N; ++j) {
        const std::size_t r = j + static_cast<std::size_t>(rng.below(pool.size() - j));
        std::swap(pool[j], pool[r]);
        out[j] = pool[j];
    }
}

}  // namespace detail

inline MeanMatrix gen_abrupt_means(const AbruptConfig& cfg, Rng& rng) {
    if (cfg.N < 1) throw ConfigError("gen_abrupt_means: arm count must be positive");
    if (static_cast<int>(cfg.mean_set.size()) < cfg.N)
        throw ConfigError("gen_abrupt_means: mean_set smaller than arm count");
    for (double m : cfg.mean_set)
        if (!(m > 0.0 && m < 1.0))
            throw ConfigError("gen_abrupt_means: mean_set values must lie in (0,1)");

    MeanMatrix mm(cfg.N, cfg.T);
    const std::vector<std::int64_t> bps = breakpoints(cfg.nu, cfg.T);

    std::vector<double> cur;
    detail::permutation_prefix(cfg.mean_set, cfg.N, rng, cur);
    std::size_t next_bp = 0;
    for (std::int64_t t = 1; t <= cfg.T; ++t) {
        if (next_bp < bps.size() && t == bps[next_bp]) {
            detail::permutation_prefix(cfg.mean_set, cfg.N, rng, cur);
            ++next_bp;
        }
        for (int j = 1; j <= cfg.N; ++j) mm.at(t, j) = cur[j - 1];
    }
    return mm;
}

inline MeanMatrix gen_slow_means(const SlowConfig& cfg, Rng& rng) {
    if (!(cfg.kappa > 0.0)) throw ConfigError("gen_slow_means: kappa must be positive");
    if (!(cfg.init_low >= 0.0 && cfg.init_low < cfg.init_high && cfg.init_high <= 1.0))
        throw ConfigError("gen_slow_means: need 0 <= init_low < init_high <= 1");

    MeanMatrix mm(cfg.N, cfg.T);
    const double eps = 2.0 * std::pow(static_cast<double>(cfg.T), -cfg.kappa);
    for (int j = 1; j <= cfg.N; ++j)
        mm.at(1, j) = rng.uniform(cfg.init_low, cfg.init_high);
    // Draw order (t-major, arm-minor) is part of the determinism contract.
    for (std::int64_t t = 1; t < cfg.T; ++t) {
        for (int j = 1; j <= cfg.N; ++j) {
            const double d = rng.uniform(-eps, eps);
            mm.at(t + 1, j) = std::clamp(mm.at(t, j) + d, 0.0, 1.0);
        }
    }
    return mm;
}

inline double sample_reward(double mu, const RewardModel& model, Rng& rng) {
    if (!(model.c > 0.0)) throw ConfigError("sample_reward: concentration must be positive");
    if (!(model.mean_clamp > 0.0 && model.mean_clamp < 0.5))
        throw ConfigError("sample_reward: mean_clamp must lie in (0, 0.5)");
    const double m = std::clamp(mu, model.mean_clamp, 1.0 - model.mean_clamp);
    return rng.beta(model.c * m, model.c * (1.0 - m));
}

// Best arm at time t (lowest index on ties) and its mean.
inline std::pair<int, double> oracle_best(const MeanMatrix& mm, std::int64_t t) {
    if (t < 1 || t > mm.horizon())
        throw std::out_of_range("oracle_best: time index outside {1..T}");
    int best = 1;
    double best_mu = mm.at(t, 1);
    for (int j = 2; j <= mm.arm_count(); ++j) {
        const double m = mm.at(t, j);
        if (m > best_mu) {
            best = j;
            best_mu = m;
        }
    }
    return {best, best_mu};
}

// Delta_j = max_t (mu*(t) - mu_j(t)); Delta_min over suboptimal arms only.
inline GapSummary gap_summary(const MeanMatrix& mm) {
    if (mm.arm_count() < 2)
        throw ConfigError("gap_summary: gaps undefined for a single arm");
    GapSummary g;
    g.delta_j.assign(mm.arm_count(), 0.0);
    g.delta_min = std::numeric_limits<double>::infinity();
    for (std::int64_t t = 1; t <= mm.horizon(); ++t) {
        const auto [jstar, best] = oracle_best(mm, t);
        for (int j = 1; j <= mm.arm_count(); ++j) {
            const double gap = best - mm.at(t, j);
            g.delta_j[j - 1] = std::max(g.delta_j[j - 1], gap);
            if (j != jstar) g.delta_min = std::min(g.delta_min, gap);
        }
    }
    g.delta_max = *std::max_element(g.delta_j.begin(), g.delta_j.end());
    return g;
}

}  // namespace nsb
