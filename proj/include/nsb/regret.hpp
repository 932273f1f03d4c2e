#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nsb/environment.hpp"
#include "nsb/errors.hpp"

// Regret bookkeeping. Instantaneous regret is defined on true means,
// r(t) = mu_{j*_t}(t) - mu_{j_t}(t), never on sampled rewards. Cumulative
// sums are plain left-to-right so results do not depend on evaluation order,
// and replication aggregation merges in index order.

namespace nsb {

struct RegretTrace {
    std::vector<double> r;  // instantaneous regret, r[t-1]
    std::vector<double> R;  // cumulative prefix sums, R[t-1]

    void reserve(std::size_t n) {
        r.reserve(n);
        R.reserve(n);
    }
    void push(double inst) {
        r.push_back(inst);
        R.push_back((R.empty() ? 0.0 : R.back()) + inst);
    }
    std::int64_t horizon() const { return static_cast<std::int64_t>(r.size()); }
};

struct AggregateTrace {
    int M = 0;                   // replication count
    std::vector<double> mean;    // mean of R(t) across replications
    std::vector<double> stddev;  // sample standard deviation (0 when M == 1)
};

inline double instantaneous_regret(const MeanMatrix& mm, std::int64_t t, int arm) {
    if (arm < 1 || arm > mm.arm_count())
        throw std::out_of_range("instantaneous_regret: arm outside {1..N}");
    const auto [jstar, best] = oracle_best(mm, t);  // validates t
    (void)jstar;
    return best - mm.at(t, arm);
}

// Left-to-right prefix sums of an instantaneous-regret sequence.
inline std::vector<double> cumulative(const std::vector<double>& r) {
    std::vector<double> R(r.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        acc += r[i];
        R[i] = acc;
    }
    return R;
}

// Pointwise mean and sample standard deviation of R(t) across replications
// (Welford, merged in replication-index order).
inline AggregateTrace aggregate(const std::vector<RegretTrace>& traces) {
    if (traces.empty()) throw ConfigError("aggregate: no replications");
    const std::size_t T = traces.front().R.size();
    for (const auto& tr : traces)
        if (tr.R.size() != T) throw ConfigError("aggregate: traces have mismatched horizons");

    AggregateTrace agg;
    agg.M = static_cast<int>(traces.size());
    agg.mean.assign(T, 0.0);
    std::vector<double> m2(T, 0.0);
    for (std::size_t m = 0; m < traces.size(); ++m) {
        const auto& R = traces[m].R;
        for (std::size_t i = 0; i < T; ++i) {
            const double delta = R[i] - agg.mean[i];
            agg.mean[i] += delta / static_cast<double>(m + 1);
            m2[i] += delta * (R[i] - agg.mean[i]);
        }
    }
    agg.stddev.assign(T, 0.0);
    if (agg.M >= 2)
        for (std::size_t i = 0; i < T; ++i)
            agg.stddev[i] = std::sqrt(m2[i] / static_cast<double>(agg.M - 1));
    return agg;
}

// Growth-order exponents for the bound denominators t^e ln t.
inline double bound_exponent_abrupt(double nu) { return (1.0 + nu) / 2.0; }
inline double bound_exponent_slow_lmdsee(double rho) {
    return (3.0 + 2.0 * rho) / (3.0 + 3.0 * rho);
}
inline double bound_exponent_slow_swucb(double alpha) { return 1.0 - alpha / 3.0; }

// Exponent for (environment, policy) with the policy's derived tuning.
// Baselines carry no order claim; callers skip the curve for them.
inline double resolve_bound_exponent(const std::string& env_tag,
                                     const std::string& policy,
                                     double nu, double rho, double alpha) {
    if (env_tag == "abrupt") return bound_exponent_abrupt(nu);
    if (env_tag == "slow") {
        if (policy == "lmdsee") return bound_exponent_slow_lmdsee(rho);
        if (policy == "swucbsharp") return bound_exponent_slow_swucb(alpha);
        throw ConfigError("resolve_bound_exponent: no bound order for policy '" + policy + "'");
    }
    throw ConfigError("resolve_bound_exponent: unknown environment tag '" + env_tag + "'");
}

struct BoundCurve {
    std::string env_tag;
    double exponent = 0.5;
    std::vector<double> value;  // value[t-1]; NaN at t=1 (ln 1 = 0)
};

inline BoundCurve bound_ratio(const AggregateTrace& agg, const std::string& env_tag,
                              double exponent) {
    BoundCurve c;
    c.env_tag = env_tag;
    c.exponent = exponent;
    c.value.assign(agg.mean.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 1; i < agg.mean.size(); ++i) {
        const double t = static_cast<double>(i + 1);
        c.value[i] = agg.mean[i] / (std::pow(t, exponent) * std::log(t));
    }
    return c;
}

}  // namespace nsb
