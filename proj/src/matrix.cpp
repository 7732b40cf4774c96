#include "omega/matrix.hpp"

#include "omega/error.hpp"

namespace omega {

std::string to_string(MatrixSpec::Kind kind) {
  switch (kind) {
    case MatrixSpec::Kind::Cesaro: return "cesaro";
    case MatrixSpec::Kind::Identity: return "identity";
    case MatrixSpec::Kind::ExplicitRows: return "rows";
  }
  return "?";
}

MatrixSpec MatrixSpec::explicit_rows(std::vector<std::vector<Rational>> rows, Tail tail) {
  for (const auto& r : rows)
    for (const auto& v : r)
      if (v < 0) fail(ErrorKind::InvalidSpec, "matrix entries must be nonnegative");
  if (rows.empty() && tail == Tail::RepeatLast)
    fail(ErrorKind::InvalidSpec, "repeatLast needs at least one row");
  return MatrixSpec(Kind::ExplicitRows, std::move(rows), tail);
}

std::uint64_t MatrixSpec::tail_start() const {
  return kind_ == Kind::ExplicitRows ? rows_.size() : 0;
}

bool MatrixSpec::cesaro_type() const {
  return kind_ == Kind::Cesaro || (kind_ == Kind::ExplicitRows && tail_ == Tail::CesaroTail);
}

Rational MatrixSpec::entry(std::uint64_t n, std::uint64_t k) const {
  switch (kind_) {
    case Kind::Cesaro:
      return k <= n ? Rational(1, 1) / from_u64(n + 1) : Rational(0);
    case Kind::Identity:
      return Rational(n == k ? 1 : 0);
    case Kind::ExplicitRows: {
      if (n < rows_.size()) return k < rows_[n].size() ? rows_[n][k] : Rational(0);
      if (tail_ == Tail::RepeatLast) {
        const auto& last = rows_.back();
        return k < last.size() ? last[k] : Rational(0);
      }
      return k <= n ? Rational(1, 1) / from_u64(n + 1) : Rational(0);
    }
  }
  return Rational(0);
}

std::uint64_t MatrixSpec::row_support_bound(std::uint64_t n) const {
  if (kind_ == Kind::ExplicitRows) {
    if (n < rows_.size()) return rows_[n].empty() ? 0 : rows_[n].size() - 1;
    if (tail_ == Tail::RepeatLast) return rows_.back().empty() ? 0 : rows_.back().size() - 1;
  }
  return n;
}

std::vector<Rational> MatrixSpec::row(std::uint64_t n) const {
  std::uint64_t bound = row_support_bound(n);
  std::vector<Rational> out;
  out.reserve(bound + 1);
  if (kind_ == Kind::Identity) {
    out.assign(bound + 1, Rational(0));
    out[n] = 1;
    return out;
  }
  if (kind_ == Kind::Cesaro || (kind_ == Kind::ExplicitRows && n >= rows_.size() &&
                                tail_ == Tail::CesaroTail)) {
    Rational v = Rational(1) / from_u64(n + 1);
    out.assign(bound + 1, v);
    return out;
  }
  for (std::uint64_t k = 0; k <= bound; ++k) out.push_back(entry(n, k));
  return out;
}

}  // namespace omega
