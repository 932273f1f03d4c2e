#pragma once

#include <stdexcept>
#include <string>

namespace nsb {

// Invalid or inconsistent configuration: bad parameter domains, impossible
// tuning (e.g. no admissible epoch scale), malformed config files.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Misuse of the policy step-interface (out-of-order select/record calls,
// feedback for an arm that was never selected).
class ProtocolError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace nsb
