#include "qdist/error.hpp"

namespace qdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::IndexTooLarge: return "IndexTooLarge";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::DegenerateState: return "DegenerateState";
    case ErrorKind::PropagatorCaustic: return "PropagatorCaustic";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonFiniteZ: return "NonFiniteZ";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergent:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::SingularMetric:
    case ErrorKind::BlowUp:
    case ErrorKind::NoConvergence:
    case ErrorKind::NonFiniteZ:
      return true;
    default:
      return false;
  }
}

}  // namespace qdist
