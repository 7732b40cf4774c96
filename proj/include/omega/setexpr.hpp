#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "omega/rational.hpp"

namespace omega {

enum class SparseRule { Squares, PowersOfTwo, Factorials };

std::string to_string(SparseRule rule);

class SetExpr;

namespace set_node {
struct Finite { std::vector<std::uint64_t> elems; };
struct Range { std::uint64_t lo, hi; };
struct ArithProg { std::uint64_t a, d; };
struct Sparse { SparseRule rule; };
struct Nu2Level { std::uint32_t k; };
struct Union { std::vector<SetExpr> args; };
struct Intersect { std::vector<SetExpr> args; };
struct Complement { std::shared_ptr<const SetExpr> arg; };
}  // namespace set_node

/// Immutable symbolic subset of the nonnegative integers.
class SetExpr {
 public:
  using Node = std::variant<set_node::Finite, set_node::Range, set_node::ArithProg,
                            set_node::Sparse, set_node::Nu2Level, set_node::Union,
                            set_node::Intersect, set_node::Complement>;

  static SetExpr finite(std::vector<std::uint64_t> elems);
  static SetExpr range(std::uint64_t lo, std::uint64_t hi);
  static SetExpr arith_prog(std::uint64_t a, std::uint64_t d);
  static SetExpr sparse(SparseRule rule);
  static SetExpr nu2_level(std::uint32_t k);
  static SetExpr set_union(std::vector<SetExpr> args);
  static SetExpr intersect(std::vector<SetExpr> args);
  static SetExpr complement(SetExpr arg);
  static SetExpr omega() { return complement(finite({})); }

  const Node& node() const { return *node_; }

  template <class T>
  const T* as() const { return std::get_if<T>(node_.get()); }

  bool is_finite_variant() const { return as<set_node::Finite>() != nullptr; }

 private:
  explicit SetExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

/// 2-adic valuation with the convention nu2(0) = 0.
std::uint32_t nu2(std::uint64_t n);

bool indicator(const SetExpr& s, std::uint64_t n);
std::vector<std::uint64_t> enumerate_prefix(const SetExpr& s, std::uint64_t N);
std::uint64_t count_prefix(const SetExpr& s, std::uint64_t N);

/// First `count` elements, scanning no further than `limit`; may return fewer.
std::vector<std::uint64_t> first_elements(const SetExpr& s, std::size_t count,
                                          std::uint64_t limit);

/// Structural equality of expressions (not extensional equality of sets).
bool same_expr(const SetExpr& a, const SetExpr& b);

// ---------------------------------------------------------------------------
// Eventual structure. Beyond a threshold every n falls in exactly one cell
// (n mod period, kind), and membership of n depends only on its cell.

enum class CellKind : std::uint8_t { Plain, SquareOnly, OddPowerOfTwo, PowerOfFour, Factorial };
inline constexpr int kCellKinds = 5;

std::string to_string(CellKind kind);

struct CellStructure {
  std::uint64_t threshold = 0;
  std::uint64_t period = 1;
  /// member[kind][r]: cell (r, kind) is contained in the set.
  std::vector<std::uint8_t> member[kCellKinds];
  /// infinite[kind][r]: the cell (r, kind) holds infinitely many integers.
  std::vector<std::uint8_t> infinite[kCellKinds];

  bool is_finite() const;
  bool is_cofinite() const;
  /// Asymptotic density (fraction of plain residues in the set).
  Rational density() const;
  /// Residues r with a plain cell in the set.
  std::vector<std::uint64_t> plain_residues() const;
  /// Kinds of infinite sparse cells contained in the set.
  std::vector<CellKind> sparse_kinds() const;
};

inline constexpr std::uint64_t kMaxCellPeriod = std::uint64_t{1} << 18;

/// Cell decomposition with the period also divisible by `extra_modulus`.
/// nullopt when the required period exceeds kMaxCellPeriod.
std::optional<CellStructure> analyze_cells(const SetExpr& s, std::uint64_t extra_modulus = 1);

}  // namespace omega
