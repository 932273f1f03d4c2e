#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "nsb/errors.hpp"
#include "nsb/numeric.hpp"
#include "nsb/policy.hpp"

// LM-DSEE: limited-memory deterministic sequencing of exploration and
// exploitation. Time is split into epochs k = 1, 2, ...:
//
//   exploration: each arm pulled L(k) times in round-robin blocks,
//                L(k) = ceil(gamma_k * ln(k^rho * l * b))
//   exploitation: the arm with the best exploration sample mean of THIS
//                epoch, pulled max(0, ep(k) - N L(k)) times,
//                ep(k) = ceil(a * k^rho * l)
//
// Statistics reset at every epoch start (limited memory). Tunings:
//
//   abruptly changing: rho = (1-nu)/(1+nu), gamma_k = gamma = 2/delta_min^2
//   slowly varying:    kt = min(kappa, kappa_max), rho = 3 kt/(4-3 kt),
//                      gamma_k = 2 (k^rho l)^{2/3}
//
// The epoch scale l is the smallest integer >= 2 whose epoch-1 schedule
// leaves at least N exploitation steps (and L(1) >= 1).

namespace nsb {

struct LmDseeParams {
    int N = 0;
    double rho = 0.0;
    double a = 1.0;
    double b = 1.0;
    long long l = 0;
    bool slow_gamma = false;  // gamma_k = 2 (k^rho l)^{2/3} when set
    double gamma = 0.0;       // fixed gamma otherwise
};

namespace detail {

inline double gamma_at(double x, const LmDseeParams& p) {
    // x = k^rho * l
    return p.slow_gamma ? 2.0 * std::pow(x, 2.0 / 3.0) : p.gamma;
}

// L(1) for a candidate epoch scale l.
inline long long epoch1_exploration(int /*N*/, double b, bool slow_gamma,
                                    double gamma, long long l) {
    const double x = static_cast<double>(l);
    const double g1 = slow_gamma ? 2.0 * std::pow(x, 2.0 / 3.0) : gamma;
    return ceil_tol(g1 * std::log(x * b));
}

}  // namespace detail

// Defining admissibility of an epoch scale l: L(1) >= 1 and the epoch-1
// exploitation block has at least N steps.
inline bool l_admissible(int N, double a, double b, bool slow_gamma,
                         double gamma, long long l) {
    if (l < 2) return false;
    const long long L1 = detail::epoch1_exploration(N, b, slow_gamma, gamma, l);
    if (L1 < 1) return false;
    return ceil_tol(a * static_cast<double>(l)) - static_cast<long long>(N) * L1 >= N;
}

inline long long choose_l(int N, double a, double b, bool slow_gamma,
                          double gamma = 0.0, long long scan_cap = 1000000000LL) {
    if (N < 1) throw ConfigError("choose_l: arm count must be positive");
    if (!(a > 0.0)) throw ConfigError("choose_l: a must be positive");
    if (!(b > 0.0 && b <= 1.0)) throw ConfigError("choose_l: b must lie in (0,1]");
    if (!slow_gamma && !(gamma > 0.0))
        throw ConfigError("choose_l: fixed gamma must be positive");
    for (long long l = 2; l <= scan_cap; ++l) {
        if (l_admissible(N, a, b, slow_gamma, gamma, l)) return l;
    }
    throw ConfigError("choose_l: no admissible epoch scale below the scan cap");
}

inline LmDseeParams lmdsee_configure_abrupt(int N, double nu, double delta_min,
                                            double a, double b) {
    if (N < 1) throw ConfigError("lmdsee_configure_abrupt: arm count must be positive");
    if (!(nu >= 0.0 && nu < 1.0))
        throw ConfigError("lmdsee_configure_abrupt: nu must lie in [0,1)");
    if (!(delta_min > 0.0 && delta_min < 1.0))
        throw ConfigError("lmdsee_configure_abrupt: delta_min must lie in (0,1)");
    LmDseeParams p;
    p.N = N;
    p.rho = (1.0 - nu) / (1.0 + nu);
    p.gamma = 2.0 / (delta_min * delta_min);  // smallest admissible gamma
    p.a = a;
    p.b = b;
    p.slow_gamma = false;
    p.l = choose_l(N, a, b, false, p.gamma);
    return p;
}

inline LmDseeParams lmdsee_configure_slow(int N, double kappa, double kappa_max,
                                          double a, double b) {
    if (N < 1) throw ConfigError("lmdsee_configure_slow: arm count must be positive");
    if (!(kappa > 0.0)) throw ConfigError("lmdsee_configure_slow: kappa must be positive");
    if (!(kappa_max > 0.0 && kappa_max < 4.0 / 3.0))
        throw ConfigError("lmdsee_configure_slow: kappa_max must lie in (0, 4/3)");
    LmDseeParams p;
    p.N = N;
    const double kt = std::min(kappa, kappa_max);
    p.rho = 3.0 * kt / (4.0 - 3.0 * kt);
    p.a = a;
    p.b = b;
    p.slow_gamma = true;
    p.gamma = 0.0;
    p.l = choose_l(N, a, b, true);
    return p;
}

inline long long exploration_length(long long k, const LmDseeParams& p) {
    assert(k >= 1);
    const double x = std::pow(static_cast<double>(k), p.rho) * static_cast<double>(p.l);
    const long long L = ceil_tol(detail::gamma_at(x, p) * std::log(x * p.b));
    if (L < 1)
        throw ConfigError("exploration_length: L(k) < 1 (epoch scale times b too small)");
    return L;
}

inline long long epoch_length(long long k, const LmDseeParams& p) {
    assert(k >= 1);
    const double x = std::pow(static_cast<double>(k), p.rho) * static_cast<double>(p.l);
    return ceil_tol(p.a * x);
}

// Exploitation block length; clamps at 0 (with the flag set) when N L(k)
// transiently exceeds the nominal epoch length.
inline long long exploitation_length(long long k, const LmDseeParams& p,
                                     bool* clamped = nullptr) {
    const long long raw =
        epoch_length(k, p) - static_cast<long long>(p.N) * exploration_length(k, p);
    if (clamped) *clamped = raw < 0;
    return std::max(0LL, raw);
}

enum class Phase { Explore, Exploit };

struct PhaseSpan {
    long long epoch;
    Phase phase;
    std::int64_t t_start;
    std::int64_t t_end;  // inclusive

    bool operator==(const PhaseSpan&) const = default;
};

// Reward-independent phase schedule covering exactly {1..T}; the final epoch
// is truncated by the horizon. Zero-length exploitation blocks are omitted.
inline std::vector<PhaseSpan> lmdsee_trajectory(const LmDseeParams& p, std::int64_t T) {
    if (T < 1) throw ConfigError("lmdsee_trajectory: horizon must be positive");
    std::vector<PhaseSpan> out;
    std::int64_t t = 1;
    for (long long k = 1; t <= T; ++k) {
        const long long explore = static_cast<long long>(p.N) * exploration_length(k, p);
        const long long exploit = exploitation_length(k, p);
        const std::int64_t e_end = std::min<std::int64_t>(T, t + explore - 1);
        out.push_back({k, Phase::Explore, t, e_end});
        t = e_end + 1;
        if (t > T || exploit == 0) continue;
        const std::int64_t x_end = std::min<std::int64_t>(T, t + exploit - 1);
        out.push_back({k, Phase::Exploit, t, x_end});
        t = x_end + 1;
    }
    return out;
}

class LmDsee : public Policy {
public:
    explicit LmDsee(const LmDseeParams& p) : p_(p) {
        if (p_.N < 1) throw ConfigError("LmDsee: arm count must be positive");
        if (p_.l < 2) throw ConfigError("LmDsee: epoch scale l must be >= 2");
        if (!(p_.a > 0.0) || !(p_.b > 0.0 && p_.b <= 1.0) || p_.rho < 0.0)
            throw ConfigError("LmDsee: invalid parameters");
        if (!p_.slow_gamma && !(p_.gamma > 0.0))
            throw ConfigError("LmDsee: fixed gamma must be positive");
        sum_.resize(p_.N);
        cnt_.resize(p_.N);
        LmDsee::do_reset();
    }

    int arm_count() const override { return p_.N; }
    std::string name() const override { return "lmdsee"; }
    const LmDseeParams& params() const { return p_; }

    long long epoch() const { return k_; }
    Phase phase() const { return phase_; }
    int exploit_arm() const { return exploit_arm_; }  // 0 while exploring

protected:
    int do_select(std::int64_t) override {
        if (phase_ == Phase::Explore)
            return static_cast<int>(pos_ / L_) + 1;  // round-robin blocks of L_
        return exploit_arm_;
    }

    void do_record(std::int64_t, int arm, double reward) override {
        if (phase_ == Phase::Explore) {
            sum_[arm - 1] += reward;
            ++cnt_[arm - 1];
            ++pos_;
            if (pos_ == static_cast<long long>(p_.N) * L_) finish_exploration();
        } else {
            ++pos_;
            if (pos_ == exploit_len_) {
                ++k_;
                begin_epoch();
            }
        }
    }

    void do_reset() override {
        k_ = 1;
        begin_epoch();
    }

private:
    void begin_epoch() {
        L_ = exploration_length(k_, p_);
        bool clamped = false;
        exploit_len_ = exploitation_length(k_, p_, &clamped);
        if (clamped && !clamp_warned_) {
            std::fprintf(stderr,
                         "lmdsee: exploitation block clamped to zero in epoch %lld "
                         "(N*L(k) exceeds the nominal epoch length)\n",
                         static_cast<long long>(k_));
            clamp_warned_ = true;
        }
        std::fill(sum_.begin(), sum_.end(), 0.0);
        std::fill(cnt_.begin(), cnt_.end(), 0LL);
        pos_ = 0;
        phase_ = Phase::Explore;
        exploit_arm_ = 0;
    }

    void finish_exploration() {
        int best = 1;
        double best_mean = sum_[0] / static_cast<double>(cnt_[0]);
        for (int j = 2; j <= p_.N; ++j) {
            const double m = sum_[j - 1] / static_cast<double>(cnt_[j - 1]);
            if (m > best_mean) {
                best = j;
                best_mean = m;
            }
        }
        if (exploit_len_ == 0) {
            ++k_;
            begin_epoch();
            return;
        }
        exploit_arm_ = best;
        phase_ = Phase::Exploit;
        pos_ = 0;
    }

    LmDseeParams p_;
    long long k_ = 1;
    Phase phase_ = Phase::Explore;
    long long L_ = 1;
    long long exploit_len_ = 0;
    long long pos_ = 0;  // steps taken inside the current phase
    int exploit_arm_ = 0;
    std::vector<double> sum_;
    std::vector<long long> cnt_;
    bool clamp_warned_ = false;
};

}  // namespace nsb
