#pragma once

#include <stdexcept>
#include <string>

namespace weylpath {

// Exit codes used by the command-line front-end. Each exception category
// below maps onto exactly one of them.
enum class ExitCode : int {
    Success = 0,
    ConfigError = 2,
    GuardViolation = 3,
    InvariantFailure = 4,
};

/// Bad argument or index outside a basis range.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or inconsistent run configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A resource or physical guard was exceeded (memory, enumeration size,
/// wave-packet wrap-around).
class GuardViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical invariant or solve failed (singular system, non-convergence).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace weylpath
