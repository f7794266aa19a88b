#pragma once
// Exception taxonomy shared across the library. The CLI maps these to
// exit codes: ConfigError -> 2, CertificationError -> 3,
// InfeasibilityError -> 4.

#include <stdexcept>
#include <string>

namespace ic3 {

/// Malformed or inconsistent user input (JSON configs, CLI arguments).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A required structural condition failed; the message names the
/// violated condition.
class CertificationError : public std::runtime_error {
 public:
  explicit CertificationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An internal precondition on mathematical inputs was violated
/// (programming error or unsupported parameter).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested optimization/projection has no feasible point.
class InfeasibilityError : public std::runtime_error {
 public:
  explicit InfeasibilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ic3
