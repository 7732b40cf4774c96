#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "omega/rational.hpp"
#include "omega/setexpr.hpp"

namespace omega {

class Seq;

using SeqEntries = std::vector<std::pair<std::uint64_t, Rational>>;

namespace seq_node {
struct FiniteSupport { SeqEntries entries; };  // strictly increasing, nonzero values

enum class NamedRule { Constant, Unit, PowersOfTwo, Identity, Harmonic };
struct Named {
  NamedRule rule = NamedRule::Constant;
  Rational c{0};        // Constant
  std::uint64_t k = 0;  // Unit
};

// Patch values win at patched indices and may be zero.
struct Overlay { std::shared_ptr<const Seq> base; SeqEntries patch; };
// base on `set`, zero elsewhere.
struct Masked { std::shared_ptr<const Seq> base; SetExpr set; };
struct Scaled { Rational factor; std::shared_ptr<const Seq> base; };
}  // namespace seq_node

/// Immutable real sequence with rational values.
class Seq {
 public:
  using Node = std::variant<seq_node::FiniteSupport, seq_node::Named, seq_node::Overlay,
                            seq_node::Masked, seq_node::Scaled>;

  /// Sorts entries and drops zero values; duplicate indices are InvalidSpec.
  static Seq finite_support(SeqEntries entries);
  static Seq constant(Rational c);
  static Seq unit(std::uint64_t k);
  static Seq powers_of_two();
  static Seq identity();
  static Seq harmonic();
  static Seq overlay(Seq base, SeqEntries patch);
  static Seq masked(Seq base, SetExpr set);
  static Seq scaled(Rational factor, Seq base);
  /// 1 on the set, 0 elsewhere.
  static Seq indicator_of(SetExpr set);

  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const { return std::get_if<T>(node_.get()); }

  Rational eval(std::uint64_t n) const;

 private:
  explicit Seq(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

inline Rational eval(const Seq& x, std::uint64_t n) { return x.eval(n); }

/// {n : |x(n) - eta| > eps}, exact and symbolic (eps >= 0).
SetExpr exceedance_set(const Seq& x, const Rational& eta, const Rational& eps);

/// supp x = {n : x(n) != 0}.
SetExpr support(const Seq& x);

/// Values the sequence accumulates at along its pieces; `unbounded` marks a
/// piece tending to infinity in absolute value. Every value of x lies within
/// any fixed distance of this set for all but finitely many n.
struct Accumulation {
  std::vector<Rational> values;  // sorted, distinct
  bool unbounded = false;
};
Accumulation accumulation(const Seq& x);

/// sup |x(n)| when finite.
std::optional<Rational> sup_abs(const Seq& x);

}  // namespace omega
