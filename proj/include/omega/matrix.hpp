#pragma once

#include <cstdint>
#include <vector>

#include "omega/rational.hpp"

namespace omega {

/// Nonnegative infinite matrix given by a closed-form row generator.
/// Every supported variant is row-finite: row n has no nonzero entry past
/// row_support_bound(n).
class MatrixSpec {
 public:
  enum class Kind { Cesaro, Identity, ExplicitRows };
  enum class Tail { RepeatLast, CesaroTail };

  static MatrixSpec cesaro() { return MatrixSpec(Kind::Cesaro, {}, Tail::CesaroTail); }
  static MatrixSpec identity() { return MatrixSpec(Kind::Identity, {}, Tail::CesaroTail); }
  /// Throws InvalidSpec on negative entries.
  static MatrixSpec explicit_rows(std::vector<std::vector<Rational>> rows, Tail tail);

  Kind kind() const { return kind_; }
  Tail tail() const { return tail_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  Rational entry(std::uint64_t n, std::uint64_t k) const;
  std::uint64_t row_support_bound(std::uint64_t n) const;
  /// Entries a_{n,0..bound}.
  std::vector<Rational> row(std::uint64_t n) const;

  /// True when rows from some index on are Cesaro rows (the ideal is then Z).
  bool cesaro_type() const;
  /// First row index from which the closed-form tail rule applies.
  std::uint64_t tail_start() const;

 private:
  MatrixSpec(Kind kind, std::vector<std::vector<Rational>> rows, Tail tail)
      : kind_(kind), rows_(std::move(rows)), tail_(tail) {}

  Kind kind_;
  std::vector<std::vector<Rational>> rows_;
  Tail tail_;
};

std::string to_string(MatrixSpec::Kind kind);

}  // namespace omega
