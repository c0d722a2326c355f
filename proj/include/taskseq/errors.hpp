#pragma once

#include <stdexcept>
#include <string>

namespace taskseq {

/// Malformed task sets, maps, experiment files or invalid parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (e.g. stepping from an out-of-bounds cell).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class TransferError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the learner when a weight leaves the configured bound.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumeration refused because the instance is larger than the configured guard.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace taskseq
