#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nsb/errors.hpp"
#include "nsb/numeric.hpp"
#include "nsb/policy.hpp"
#include "nsb/rng.hpp"

// Stationary baselines: classic UCB, block-structured DSEE, and a uniform
// random policy (the regret yardstick).

namespace nsb {

// UCB with full-history statistics: after one pull of each arm, pulls
// argmax_j rbar_j + sqrt(2 ln(t-1) / n_j).
class Ucb : public Policy {
public:
    explicit Ucb(int arm_count) : N_(arm_count), sum_(arm_count, 0.0), cnt_(arm_count, 0) {
        if (arm_count < 1) throw ConfigError("Ucb: arm count must be positive");
    }

    int arm_count() const override { return N_; }
    std::string name() const override { return "ucb"; }

protected:
    int do_select(std::int64_t t) override {
        if (t <= N_) return static_cast<int>(t);
        const double logt = std::log(static_cast<double>(t - 1));
        int best = 1;
        double best_idx = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= N_; ++j) {
            const double mean = sum_[j - 1] / static_cast<double>(cnt_[j - 1]);
            const double idx = mean + std::sqrt(2.0 * logt / static_cast<double>(cnt_[j - 1]));
            if (idx > best_idx) {
                best = j;
                best_idx = idx;
            }
        }
        return best;
    }

    void do_record(std::int64_t, int arm, double reward) override {
        sum_[arm - 1] += reward;
        ++cnt_[arm - 1];
    }

    void do_reset() override {
        std::fill(sum_.begin(), sum_.end(), 0.0);
        std::fill(cnt_.begin(), cnt_.end(), 0LL);
    }

private:
    int N_;
    std::vector<double> sum_;
    std::vector<long long> cnt_;
};

// Stationary DSEE: keep exploring (in atomic round-robin blocks of one pull
// per arm) while the explored-step count is below N*ceil(w ln t); otherwise
// pull the best full-exploration-history sample mean. Exploitation requires
// at least one completed exploration observation, so the run always starts
// with an exploration block.
class DseeBaseline : public Policy {
public:
    DseeBaseline(int arm_count, double w)
        : N_(arm_count), w_(w), sum_(arm_count, 0.0), cnt_(arm_count, 0) {
        if (arm_count < 1) throw ConfigError("DseeBaseline: arm count must be positive");
        if (!(w > 0.0)) throw ConfigError("DseeBaseline: w must be positive");
    }

    int arm_count() const override { return N_; }
    std::string name() const override { return "dsee"; }

    long long explored_steps() const { return explore_steps_; }

protected:
    int do_select(std::int64_t t) override {
        if (in_block_) return block_pos_ + 1;
        const long long threshold =
            static_cast<long long>(N_) * ceil_tol(w_ * std::log(static_cast<double>(t)));
        if (explore_steps_ < threshold || explore_steps_ == 0) {
            in_block_ = true;
            block_pos_ = 0;
            return 1;
        }
        int best = 1;
        double best_mean = sum_[0] / static_cast<double>(cnt_[0]);
        for (int j = 2; j <= N_; ++j) {
            const double m = sum_[j - 1] / static_cast<double>(cnt_[j - 1]);
            if (m > best_mean) {
                best = j;
                best_mean = m;
            }
        }
        return best;
    }

    void do_record(std::int64_t, int arm, double reward) override {
        if (!in_block_) return;  // exploitation feedback is not accumulated
        sum_[arm - 1] += reward;
        ++cnt_[arm - 1];
        ++explore_steps_;
        ++block_pos_;
        if (block_pos_ == N_) {
            in_block_ = false;
            block_pos_ = 0;
        }
    }

    void do_reset() override {
        std::fill(sum_.begin(), sum_.end(), 0.0);
        std::fill(cnt_.begin(), cnt_.end(), 0LL);
        explore_steps_ = 0;
        in_block_ = false;
        block_pos_ = 0;
    }

private:
    int N_;
    double w_;
    std::vector<double> sum_;
    std::vector<long long> cnt_;
    long long explore_steps_ = 0;
    bool in_block_ = false;
    int block_pos_ = 0;
};

// Uniform-random arm choice; draws from an external stream owned by the
// caller (the harness replication stream).
class RandomPolicy : public Policy {
public:
    RandomPolicy(int arm_count, Rng* rng) : N_(arm_count), rng_(rng) {
        if (arm_count < 1) throw ConfigError("RandomPolicy: arm count must be positive");
        if (rng == nullptr) throw ConfigError("RandomPolicy: needs a random stream");
    }

    int arm_count() const override { return N_; }
    std::string name() const override { return "random"; }

protected:
    int do_select(std::int64_t) override {
        return static_cast<int>(rng_->below(static_cast<std::uint64_t>(N_))) + 1;
    }
    void do_record(std::int64_t, int, double) override {}
    void do_reset() override {}

private:
    int N_;
    Rng* rng_;
};

}  // namespace nsb
