#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

// Input outside the mathematical domain of an operation (bad id, f <= 0, singular node).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (grid too small, field not interior-supported).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Request is well formed but deliberately not handled (non-separable system, non-terminating series).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to converge or behaved in a way that signals a mishandled problem.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdm
