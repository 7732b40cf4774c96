#pragma once

#include <cstdint>

#include "omega/rational.hpp"

namespace omega {

/// Finite truncation of limit statements: index horizon, trace length,
/// tolerance, and the persistence fraction used to detect recurring levels.
struct HorizonParams {
  std::uint64_t N = 100'000;
  std::uint64_t rows = 1'000;
  Rational eps{1, 100};
  Rational recurrence{1, 10};

  /// Throws InvalidSpec unless N >= rows >= 1, eps > 0 and recurrence in (0,1].
  void validate() const;

  /// `rows` sample points spread evenly over [0, N).
  std::uint64_t sample_point(std::uint64_t i) const;
};

}  // namespace omega
