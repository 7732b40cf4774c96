#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omega {

enum class ErrorKind {
  InvalidSpec,
  UnsupportedFamily,
  NotApplicable,
  NotInfinite,
  InsufficientHorizon,
  NotTall,
  NotFound,
  DomainError,
  KappaScanInconclusive,
  SelectionFailed,
  InconsistentDeclaration,
};

std::string_view to_string(ErrorKind kind);

/// Library error carrying a machine-readable kind. The CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace omega
