#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdist {

enum class ErrorKind {
  // input validation
  OutOfDomain,
  DomainMismatch,
  IndexTooLarge,
  InvalidState,
  DimensionMismatch,
  SupportViolation,
  DegenerateState,
  PropagatorCaustic,
  DivisionByZero,
  InvalidInput,
  // numerical failure
  NonConvergent,
  QuadratureFailure,
  SingularMetric,
  BlowUp,
  NoConvergence,
  NonFiniteZ,
};

std::string_view to_string(ErrorKind kind);

// True for kinds caused by a numerical method failing rather than bad input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace qdist
