#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nsb/errors.hpp"
#include "nsb/numeric.hpp"
#include "nsb/policy.hpp"

// SW-UCB#: UCB over a growing sliding window
//
//   tau(t, alpha) = min(ceil(lambda * t^alpha), t)
//
// At time t > N the policy pulls
//
//   argmax_j  rbar_j(t-1, alpha) + sqrt((1+alpha) ln(t-1) / n_j(t-1, alpha))
//
// over window statistics n_j / rbar_j of the last tau(t-1, alpha) steps.
// Arms with no observation inside the window take strict priority (treated
// as infinitely uncertain), lowest index first; other ties also break to the
// lowest index. Initialization pulls arm t for t in {1..N}.
//
// Window sums are maintained incrementally with Neumaier compensation, so
// they match a from-scratch recomputation to ~1e-12 over long runs. The
// window start never moves backward (tau grows by at most one per step),
// which makes eviction-only maintenance exact.

namespace nsb {

struct SwUcbSharpParams {
    int N = 0;
    double alpha = 0.5;   // in (0,1]
    double lambda = 1.0;  // > 0
};

inline long long swucb_window(std::int64_t t, double alpha, double lambda) {
    assert(t >= 1);
    const long long tau =
        ceil_tol(lambda * std::pow(static_cast<double>(t), alpha));
    return std::min<long long>(tau, t);
}

inline double confidence_radius(double t, double alpha, long long n) {
    assert(t >= 2.0 && n >= 1);
    return std::sqrt((1.0 + alpha) * std::log(t) / static_cast<double>(n));
}

struct WindowStats {
    std::vector<long long> n;
    std::vector<double> rbar;  // NaN marks arms with n == 0
};

// Incremental per-arm statistics over the sliding window. Kept separate from
// the policy so the maintenance logic can be driven directly in tests.
class WindowBuffer {
public:
    explicit WindowBuffer(int arm_count)
        : N_(arm_count), cnt_(arm_count, 0), sum_(arm_count, 0.0), comp_(arm_count, 0.0) {}

    // Record the pull at time t (t must advance by one per call) and evict
    // everything older than the window {t - tau(t,alpha) + 1, ..., t}.
    void push(std::int64_t t, int arm, double reward, double alpha, double lambda) {
        assert(arm >= 1 && arm <= N_);
        arms_.push_back(arm);
        rewards_.push_back(reward);
        neumaier_add(sum_[arm - 1], comp_[arm - 1], reward);
        ++cnt_[arm - 1];
        const long long tau = swucb_window(t, alpha, lambda);
        while (static_cast<long long>(arms_.size() - lo_) > tau) {
            const int a = arms_[lo_];
            neumaier_add(sum_[a - 1], comp_[a - 1], -rewards_[lo_]);
            --cnt_[a - 1];
            ++lo_;
        }
        compact();
    }

    long long count(int arm) const { return cnt_[arm - 1]; }

    double mean(int arm) const {
        assert(cnt_[arm - 1] > 0);
        return (sum_[arm - 1] + comp_[arm - 1]) / static_cast<double>(cnt_[arm - 1]);
    }

    WindowStats stats() const {
        WindowStats ws;
        ws.n = cnt_;
        ws.rbar.assign(N_, std::numeric_limits<double>::quiet_NaN());
        for (int j = 1; j <= N_; ++j)
            if (cnt_[j - 1] > 0) ws.rbar[j - 1] = mean(j);
        return ws;
    }

    // Retained history (window suffix), oldest first; for test oracles.
    std::size_t window_size() const { return arms_.size() - lo_; }
    int window_arm(std::size_t i) const { return arms_[lo_ + i]; }
    double window_reward(std::size_t i) const { return rewards_[lo_ + i]; }

private:
    void compact() {
        if (lo_ > 4096 && lo_ > arms_.size() / 2) {
            arms_.erase(arms_.begin(), arms_.begin() + static_cast<std::ptrdiff_t>(lo_));
            rewards_.erase(rewards_.begin(), rewards_.begin() + static_cast<std::ptrdiff_t>(lo_));
            lo_ = 0;
        }
    }

    int N_;
    std::vector<int> arms_;
    std::vector<double> rewards_;
    std::size_t lo_ = 0;  // index of the oldest retained pull inside the window
    std::vector<long long> cnt_;
    std::vector<double> sum_;
    std::vector<double> comp_;
};

class SwUcbSharp : public Policy {
public:
    explicit SwUcbSharp(const SwUcbSharpParams& p) : p_(p), win_(validate(p)) {}

    int arm_count() const override { return p_.N; }
    std::string name() const override { return "swucbsharp"; }
    const SwUcbSharpParams& params() const { return p_; }

    // Window statistics as of the last recorded step.
    WindowStats window_stats() const { return win_.stats(); }
    const WindowBuffer& window() const { return win_; }

protected:
    int do_select(std::int64_t t) override {
        if (t <= p_.N) return static_cast<int>(t);
        for (int j = 1; j <= p_.N; ++j)
            if (win_.count(j) == 0) return j;  // forced re-exploration
        const double logt = std::log(static_cast<double>(t - 1));
        int best = 1;
        double best_idx = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= p_.N; ++j) {
            const double idx =
                win_.mean(j) + std::sqrt((1.0 + p_.alpha) * logt /
                                         static_cast<double>(win_.count(j)));
            if (idx > best_idx) {
                best = j;
                best_idx = idx;
            }
        }
        return best;
    }

    void do_record(std::int64_t t, int arm, double reward) override {
        win_.push(t, arm, reward, p_.alpha, p_.lambda);
    }

    void do_reset() override { win_ = WindowBuffer(p_.N); }

private:
    static int validate(const SwUcbSharpParams& p) {
        if (p.N < 1) throw ConfigError("SwUcbSharp: arm count must be positive");
        if (!(p.alpha > 0.0 && p.alpha <= 1.0))
            throw ConfigError("SwUcbSharp: alpha must lie in (0,1]");
        if (!(p.lambda > 0.0)) throw ConfigError("SwUcbSharp: lambda must be positive");
        return p.N;
    }

    SwUcbSharpParams p_;
    WindowBuffer win_;
};

}  // namespace nsb
