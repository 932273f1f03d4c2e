#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "nsb/errors.hpp"
#include "nsb/lmdsee.hpp"
#include "nsb/rng.hpp"

using nsb::ConfigError;
using nsb::LmDsee;
using nsb::LmDseeParams;
using nsb::Phase;
using nsb::PhaseSpan;
using nsb::ProtocolError;

namespace {

// Two-epoch fixture with hand-checkable numbers: L(1)=36, ep(1)=360 (all
// exploration), L(2)=39, ep(2)=510.
LmDseeParams fixture360() {
    LmDseeParams p;
    p.N = 10;
    p.rho = 0.5;
    p.a = 1.0;
    p.b = 0.25;
    p.l = 360;
    p.gamma = 8.0;
    return p;
}

// Minimal unrollable schedule: N=2, L(k)=1, epoch length 4 for every k.
LmDseeParams fixture_unroll() {
    LmDseeParams p;
    p.N = 2;
    p.rho = 0.0;
    p.a = 1.0;
    p.b = std::exp(1.0) / 4.0;  // ln(l*b) = 1
    p.l = 4;
    p.gamma = 1.0;
    return p;
}

}  // namespace

TEST_CASE("abrupt tuning: rho and gamma formulas") {
    const auto p0 = nsb::lmdsee_configure_abrupt(10, 0.0, 0.3, 1.0, 0.25);
    CHECK(p0.rho == 1.0);
    const auto p13 = nsb::lmdsee_configure_abrupt(10, 1.0 / 3.0, 0.3, 1.0, 0.25);
    CHECK_THAT(p13.rho, Catch::Matchers::WithinAbs(0.5, 1e-15));
    const auto ph = nsb::lmdsee_configure_abrupt(10, 0.2, 0.5, 1.0, 0.25);
    CHECK(ph.gamma == 8.0);  // 2 / 0.5^2
    CHECK_FALSE(ph.slow_gamma);

    CHECK_THROWS_AS(nsb::lmdsee_configure_abrupt(0, 0.2, 0.3, 1.0, 0.25), ConfigError);
    CHECK_THROWS_AS(nsb::lmdsee_configure_abrupt(10, 1.0, 0.3, 1.0, 0.25), ConfigError);
    CHECK_THROWS_AS(nsb::lmdsee_configure_abrupt(10, 0.2, 0.0, 1.0, 0.25), ConfigError);
    CHECK_THROWS_AS(nsb::lmdsee_configure_abrupt(10, 0.2, 1.0, 1.0, 0.25), ConfigError);
}

TEST_CASE("slow tuning: saturated kappa and rho formulas") {
    const auto p1 = nsb::lmdsee_configure_slow(10, 2.0 / 3.0, 1.0, 20.0, 1.0);
    CHECK_THAT(p1.rho, Catch::Matchers::WithinAbs(1.0, 1e-15));  // 2/(4-2)
    CHECK(p1.slow_gamma);

    const auto p3 = nsb::lmdsee_configure_slow(10, 10.0, 1.0, 20.0, 1.0);
    CHECK_THAT(p3.rho, Catch::Matchers::WithinAbs(3.0, 1e-15));  // saturates at 1

    const auto p_small = nsb::lmdsee_configure_slow(10, 1e-4, 1.0, 20.0, 1.0);
    CHECK(p_small.rho < 1e-3);  // rho -> 0 as kappa -> 0

    CHECK_THROWS_AS(nsb::lmdsee_configure_slow(10, 0.0, 1.0, 20.0, 1.0), ConfigError);
    CHECK_THROWS_AS(nsb::lmdsee_configure_slow(10, 0.5, 4.0 / 3.0, 20.0, 1.0), ConfigError);
    CHECK_THROWS_AS(nsb::lmdsee_configure_slow(0, 0.5, 1.0, 20.0, 1.0), ConfigError);
}

TEST_CASE("choose_l: frozen scan results with verified minimality") {
    struct Case {
        int N;
        double a, b;
        bool slow;
        double gamma;
        long long expected;
    };
    const Case cases[] = {
        {10, 1.0, 0.25, false, 8.0, 380},
        {1, 1.0, 1.0, false, 1.0, 2},
        {10, 20.0, 1.0, true, 0.0, 2},
        {10, 1.0, 0.25, false, 2.0 / 0.09, 1300},  // gamma for delta_min = 0.3
    };
    for (const auto& c : cases) {
        const long long l = nsb::choose_l(c.N, c.a, c.b, c.slow, c.gamma);
        CHECK(l == c.expected);
        CHECK(nsb::l_admissible(c.N, c.a, c.b, c.slow, c.gamma, l));
        // Minimality: every smaller candidate fails the admissibility test.
        for (long long m = 2; m < l; ++m)
            REQUIRE_FALSE(nsb::l_admissible(c.N, c.a, c.b, c.slow, c.gamma, m));
    }
}

TEST_CASE("choose_l: epoch-1 margin holds at the returned scale") {
    const auto p = nsb::lmdsee_configure_abrupt(10, 0.2, 0.5, 1.0, 0.25);
    REQUIRE(p.l == 380);
    CHECK(nsb::exploration_length(1, p) == 37);  // ceil(8 ln 95)
    CHECK(nsb::epoch_length(1, p) == 380);
    CHECK(nsb::exploitation_length(1, p) == 10);  // exactly the N margin
}

TEST_CASE("choose_l: domain errors and scan-cap exhaustion") {
    CHECK_THROWS_AS(nsb::choose_l(0, 1.0, 0.25, false, 8.0), ConfigError);
    CHECK_THROWS_AS(nsb::choose_l(10, 0.0, 0.25, false, 8.0), ConfigError);
    CHECK_THROWS_AS(nsb::choose_l(10, 1.0, 1.5, false, 8.0), ConfigError);
    CHECK_THROWS_AS(nsb::choose_l(10, 1.0, 0.25, false, 0.0), ConfigError);
    // gamma so large that no scale below the cap leaves an exploitation block
    CHECK_THROWS_AS(nsb::choose_l(10, 1.0, 1.0, false, 1e6, 100000), ConfigError);
}

TEST_CASE("exploration_length: formula evaluations") {
    LmDseeParams p = fixture360();
    CHECK(nsb::exploration_length(1, p) == 36);  // ceil(8 ln 90)
    CHECK(nsb::exploration_length(4, p) == 42);  // ceil(8 ln 180), k^0.5 = 2

    // ln(l*b) = 1 makes L = ceil(gamma) directly.
    LmDseeParams pe;
    pe.N = 3;
    pe.rho = 0.5;
    pe.a = 1.0;
    pe.b = std::exp(1.0) / 3.0;
    pe.l = 3;
    pe.gamma = 8.0;
    CHECK(nsb::exploration_length(1, pe) == 8);

    // Slow rule at l=2: gamma_1 = 2*2^(2/3), L(1) = ceil(gamma_1 ln 2) = 3.
    LmDseeParams ps;
    ps.N = 10;
    ps.rho = 3.0;
    ps.a = 20.0;
    ps.b = 1.0;
    ps.l = 2;
    ps.slow_gamma = true;
    CHECK(nsb::exploration_length(1, ps) == 3);

    // l*b < 1 makes ln negative: configuration error, not a silent L <= 0.
    LmDseeParams bad = fixture360();
    bad.l = 2;  // ln(0.5) < 0
    CHECK_THROWS_AS(nsb::exploration_length(1, bad), ConfigError);
}

TEST_CASE("epoch_length: formula evaluations") {
    LmDseeParams p = fixture360();
    CHECK(nsb::epoch_length(1, p) == 360);
    CHECK(nsb::epoch_length(4, p) == 720);  // ceil(2 * 360)

    LmDseeParams ps;
    ps.N = 10;
    ps.rho = 1.0;
    ps.a = 20.0;
    ps.b = 1.0;
    ps.l = 94;
    ps.slow_gamma = true;
    CHECK(nsb::epoch_length(2, ps) == 3760);  // ceil(20 * 2 * 94)
}

TEST_CASE("exploitation_length: clamps at zero and reports it") {
    // Slow tuning at l=2 (the scan result for N=10, a=20, b=1): epochs 2 and
    // 3 have N*L(k) above the nominal epoch length, so the block clamps.
    const auto p = nsb::lmdsee_configure_slow(10, 1.0, 1.0, 20.0, 1.0);
    REQUIRE(p.l == 2);
    bool clamped = false;
    CHECK(nsb::exploitation_length(1, p, &clamped) == 10);
    CHECK_FALSE(clamped);
    CHECK(nsb::exploitation_length(2, p, &clamped) == 0);  // 320 - 360
    CHECK(clamped);
    CHECK(nsb::exploitation_length(3, p, &clamped) == 0);  // 1080 - 1140
    CHECK(clamped);
    CHECK(nsb::exploitation_length(4, p, &clamped) == 90);  // 2560 - 2470
    CHECK_FALSE(clamped);
}

TEST_CASE("lmdsee_trajectory: truncation fixtures") {
    const LmDseeParams p = fixture360();
    SECTION("epoch 1 has no exploitation block; epoch 2 truncates at T=400") {
        const auto spans = nsb::lmdsee_trajectory(p, 400);
        const std::vector<PhaseSpan> expected = {
            {1, Phase::Explore, 1, 360},
            {2, Phase::Explore, 361, 400},
        };
        CHECK(spans == expected);
    }
    SECTION("horizon inside the first exploration block") {
        const auto spans = nsb::lmdsee_trajectory(p, 50);
        REQUIRE(spans.size() == 1);
        CHECK(spans[0] == PhaseSpan{1, Phase::Explore, 1, 50});
    }
    SECTION("full second epoch includes its exploitation block") {
        const auto spans = nsb::lmdsee_trajectory(p, 870);
        const std::vector<PhaseSpan> expected = {
            {1, Phase::Explore, 1, 360},
            {2, Phase::Explore, 361, 750},   // 390 = 10 * L(2), L(2) = 39
            {2, Phase::Exploit, 751, 870},   // 120 = 510 - 390
        };
        CHECK(spans == expected);
    }
    CHECK_THROWS_AS(nsb::lmdsee_trajectory(p, 0), ConfigError);
}

TEST_CASE("lmdsee_trajectory: spans cover exactly {1..T} in order") {
    const LmDseeParams cand[] = {
        nsb::lmdsee_configure_abrupt(10, 0.2, 0.3, 1.0, 0.25),
        nsb::lmdsee_configure_abrupt(3, 0.6, 0.5, 1.0, 0.5),
        nsb::lmdsee_configure_slow(10, 1.0, 1.0, 20.0, 1.0),
        nsb::lmdsee_configure_slow(2, 0.4, 1.0, 5.0, 1.0),
    };
    for (const auto& p : cand) {
        for (const std::int64_t T : {1LL, 37LL, 1000LL, 25000LL}) {
            const auto spans = nsb::lmdsee_trajectory(p, T);
            REQUIRE_FALSE(spans.empty());
            std::int64_t expect = 1;
            long long last_epoch = 0;
            for (const auto& s : spans) {
                REQUIRE(s.t_start == expect);
                REQUIRE(s.t_end >= s.t_start);
                REQUIRE(s.epoch >= last_epoch);
                last_epoch = s.epoch;
                expect = s.t_end + 1;
            }
            REQUIRE(expect == T + 1);
        }
    }
}

TEST_CASE("step sequence: N=2 unrolled epochs follow explore -> argmax") {
    LmDsee policy(fixture_unroll());
    // Epoch 1: explore arms 1,2 with arm 2 better, then exploit arm 2 twice.
    CHECK(policy.select(1) == 1);
    policy.record(1, 1, 0.2);
    CHECK(policy.select(2) == 2);
    policy.record(2, 2, 0.8);
    CHECK(policy.exploit_arm() == 2);
    CHECK(policy.select(3) == 2);
    policy.record(3, 2, 0.0);  // exploitation rewards must not matter
    CHECK(policy.select(4) == 2);
    policy.record(4, 2, 0.0);
    // Epoch 2: fresh statistics (limited memory); now arm 1 is better.
    CHECK(policy.epoch() == 2);
    CHECK(policy.select(5) == 1);
    policy.record(5, 1, 0.9);
    CHECK(policy.select(6) == 2);
    policy.record(6, 2, 0.1);
    CHECK(policy.select(7) == 1);
    policy.record(7, 1, 0.0);
    CHECK(policy.select(8) == 1);
}

TEST_CASE("step sequence: exploitation tie breaks to the lowest arm index") {
    LmDsee policy(fixture_unroll());
    CHECK(policy.select(1) == 1);
    policy.record(1, 1, 0.5);
    CHECK(policy.select(2) == 2);
    policy.record(2, 2, 0.5);
    CHECK(policy.select(3) == 1);
}

TEST_CASE("per-epoch exploration pulls each arm exactly L(k) times") {
    const auto p = nsb::lmdsee_configure_abrupt(4, 0.3, 0.4, 1.0, 0.5);
    LmDsee policy(p);
    nsb::Rng rng(31);
    const std::int64_t T = 20000;
    const auto spans = nsb::lmdsee_trajectory(p, T);

    std::map<long long, std::map<int, long long>> explore_counts;
    std::size_t span_i = 0;
    for (std::int64_t t = 1; t <= T; ++t) {
        while (spans[span_i].t_end < t) ++span_i;
        const auto& span = spans[span_i];
        // The live policy must agree with the precomputed schedule.
        REQUIRE(policy.epoch() == span.epoch);
        REQUIRE(policy.phase() == span.phase);
        const int arm = policy.select(t);
        if (span.phase == Phase::Explore) explore_counts[span.epoch][arm]++;
        policy.record(t, arm, rng.uniform01());
    }
    // Drop the final (possibly truncated) epoch, then check exact counts.
    const long long last_epoch = spans.back().epoch;
    for (const auto& [k, counts] : explore_counts) {
        if (k == last_epoch) continue;
        const long long L = nsb::exploration_length(k, p);
        REQUIRE(counts.size() == 4);
        for (const auto& [arm, n] : counts) REQUIRE(n == L);
    }
}

TEST_CASE("phase boundaries are reward-independent across 100 seeds") {
    const auto p = nsb::lmdsee_configure_abrupt(3, 0.5, 0.5, 1.0, 0.5);
    const std::int64_t T = 3000;
    const auto spans = nsb::lmdsee_trajectory(p, T);

    for (int seed = 0; seed < 100; ++seed) {
        nsb::Rng rng(static_cast<std::uint64_t>(seed));
        LmDsee policy(p);
        std::size_t span_i = 0;
        for (std::int64_t t = 1; t <= T; ++t) {
            while (spans[span_i].t_end < t) ++span_i;
            REQUIRE(policy.epoch() == spans[span_i].epoch);
            REQUIRE(policy.phase() == spans[span_i].phase);
            const int arm = policy.select(t);
            policy.record(t, arm, rng.uniform01());
        }
    }
}

TEST_CASE("limited memory: exploitation arm ignores rewards of earlier epochs") {
    const LmDseeParams p = fixture_unroll();  // epochs of length 4, L=1
    // Epoch 3 explores at t = 9, 10. Feed identical rewards there, but
    // completely different rewards everywhere earlier.
    auto run_epoch3_arm = [&](double early_a, double early_b) {
        LmDsee policy(p);
        int arm_at_11 = 0;
        for (std::int64_t t = 1; t <= 11; ++t) {
            const int arm = policy.select(t);
            if (t == 11) {
                arm_at_11 = arm;
                break;
            }
            double r;
            if (t == 9)
                r = 0.1;  // epoch-3 sample for arm 1
            else if (t == 10)
                r = 0.9;  // epoch-3 sample for arm 2
            else
                r = (arm == 1) ? early_a : early_b;
            policy.record(t, arm, r);
        }
        return arm_at_11;
    };
    const int baseline = run_epoch3_arm(0.9, 0.1);
    const int perturbed = run_epoch3_arm(0.2, 0.7);
    CHECK(baseline == 2);
    CHECK(perturbed == baseline);
}

TEST_CASE("zero-length exploitation rolls straight into the next epoch") {
    LmDseeParams p = fixture360();  // epoch 1: ep = N*L = 360, exploit = 0
    LmDsee policy(p);
    nsb::Rng rng(5);
    for (std::int64_t t = 1; t <= 360; ++t) {
        const int arm = policy.select(t);
        REQUIRE(policy.phase() == Phase::Explore);
        REQUIRE(policy.epoch() == 1);
        policy.record(t, arm, rng.uniform01());
    }
    CHECK(policy.epoch() == 2);
    CHECK(policy.phase() == Phase::Explore);
}

TEST_CASE("step protocol violations raise errors") {
    LmDsee policy(fixture_unroll());
    CHECK_THROWS_AS(policy.record(1, 1, 0.5), ProtocolError);  // record before select
    const int arm = policy.select(1);
    CHECK_THROWS_AS(policy.select(1), ProtocolError);          // select twice
    CHECK_THROWS_AS(policy.select(2), ProtocolError);
    CHECK_THROWS_AS(policy.record(1, arm + 1, 0.5), ProtocolError);  // wrong arm
    CHECK_THROWS_AS(policy.record(2, arm, 0.5), ProtocolError);      // wrong time
    CHECK_THROWS_AS(policy.record(1, arm, 1.5), ProtocolError);      // bad reward
    policy.record(1, arm, 0.5);
    CHECK(policy.select(2) == 2);

    policy.reset();
    CHECK(policy.select(1) == 1);
    CHECK(policy.epoch() == 1);
}

TEST_CASE("constructor validates parameters") {
    LmDseeParams p = fixture_unroll();
    p.l = 1;
    CHECK_THROWS_AS(LmDsee(p), ConfigError);
    p = fixture_unroll();
    p.b = 1.5;
    CHECK_THROWS_AS(LmDsee(p), ConfigError);
    p = fixture_unroll();
    p.gamma = 0.0;
    p.slow_gamma = false;
    CHECK_THROWS_AS(LmDsee(p), ConfigError);
    p = fixture_unroll();
    p.N = 0;
    CHECK_THROWS_AS(LmDsee(p), ConfigError);
}
