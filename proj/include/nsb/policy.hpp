#pragma once

#include <cstdint>
#include <string>

#include "nsb/errors.hpp"

// Step-interface shared by all policies. The harness alternates
//
//   arm = policy.select(t);
//   policy.record(t, arm, reward);
//
// for t = 1, 2, ... The base class validates the call sequence so that a
// mismatched or skipped feedback surfaces immediately as a ProtocolError
// instead of silently corrupting policy state.

namespace nsb {

class Policy {
public:
    virtual ~Policy() = default;

    int select(std::int64_t t) {
        if (awaiting_reward_ || t != t_expect_)
            throw ProtocolError("select: expected record() for t=" +
                                std::to_string(t_expect_));
        const int arm = do_select(t);
        if (arm < 1 || arm > arm_count())
            throw ProtocolError("select: policy produced arm outside {1..N}");
        last_arm_ = arm;
        awaiting_reward_ = true;
        return arm;
    }

    void record(std::int64_t t, int arm, double reward) {
        if (!awaiting_reward_ || t != t_expect_ || arm != last_arm_)
            throw ProtocolError("record: feedback does not match the pending selection");
        if (!(reward >= 0.0 && reward <= 1.0))
            throw ProtocolError("record: reward outside [0,1]");
        do_record(t, arm, reward);
        awaiting_reward_ = false;
        ++t_expect_;
    }

    void reset() {
        t_expect_ = 1;
        last_arm_ = 0;
        awaiting_reward_ = false;
        do_reset();
    }

    virtual int arm_count() const = 0;
    virtual std::string name() const = 0;

protected:
    virtual int do_select(std::int64_t t) = 0;
    virtual void do_record(std::int64_t t, int arm, double reward) = 0;
    virtual void do_reset() = 0;

private:
    std::int64_t t_expect_ = 1;
    int last_arm_ = 0;
    bool awaiting_reward_ = false;
};

}  // namespace nsb
