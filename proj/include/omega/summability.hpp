#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omega/ideals.hpp"
#include "omega/matrix.hpp"
#include "omega/seq.hpp"

namespace omega {

/// Silverman-Toeplitz conditions for a nonnegative matrix.
TriState check_regularity(const MatrixSpec& a, const HorizonParams& params = {});

/// (Ax)(n) for n < rows, exact. Every supported matrix is row-finite, so the
/// series are finite sums.
std::vector<Rational> transform_prefix(const MatrixSpec& a, const Seq& x, std::uint64_t rows);

/// Pringsheim limit of the entries against 0. The trace holds
/// tau(n0) = max_{n,k >= n0} a_{n,k} at the sample points.
TriState pringsheim_zero_estimate(const MatrixSpec& a, const HorizonParams& params = {});

struct Seminorms {
  Rational p;  // |x(n)|
  Rational q;  // max_{m <= N} |sum_{k <= m} a_{n,k} x(k)|
  bool stabilized = false;
};

Seminorms eval_seminorms(const MatrixSpec& a, const Seq& x, std::uint64_t n,
                         const HorizonParams& params = {});

struct TransformMembership {
  TriState result;
  std::optional<Rational> limit;      // certified when result is In
  std::optional<Rational> candidate;  // horizon guess when result is Unknown
};

/// Is Ax in c(I)?
TransformMembership cA_membership_estimate(const MatrixSpec& a, const IdealSpec& ideal,
                                           const Seq& x, const HorizonParams& params = {});

}  // namespace omega
