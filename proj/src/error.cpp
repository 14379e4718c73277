#include "gpdind/error.hpp"

namespace gpdind {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedSpec: return "MalformedSpec";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::InvalidRep: return "InvalidRep";
    case ErrorKind::NotIsotropyCase: return "NotIsotropyCase";
    case ErrorKind::QuotientInconsistency: return "QuotientInconsistency";
    case ErrorKind::ChainViolation: return "ChainViolation";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::NotIrreducibleInput: return "NotIrreducibleInput";
  }
  return "Unknown";
}

}  // namespace gpdind
