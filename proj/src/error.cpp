#include "omega/error.hpp"

namespace omega {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotInfinite: return "NotInfinite";
    case ErrorKind::InsufficientHorizon: return "InsufficientHorizon";
    case ErrorKind::NotTall: return "NotTall";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::KappaScanInconclusive: return "KappaScanInconclusive";
    case ErrorKind::SelectionFailed: return "SelectionFailed";
    case ErrorKind::InconsistentDeclaration: return "InconsistentDeclaration";
  }
  return "Unknown";
}

}  // namespace omega
