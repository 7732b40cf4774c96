#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "omega/matrix.hpp"
#include "omega/params.hpp"
#include "omega/rational.hpp"
#include "omega/setexpr.hpp"

namespace omega {

/// Weight function f: omega -> [0, inf) for summable ideals: an optional
/// finite table followed by a named tail rule (applied at absolute indices).
struct WeightSpec {
  enum class Rule {
    Harmonic,     // 1/(n+1)
    Constant,     // c
    Alternating,  // c on even n, 2/(n+3) on odd n
    ZeroAfter,    // 0
  };

  std::vector<Rational> table;
  Rule tail = Rule::Harmonic;
  Rational c{0};

  Rational value(std::uint64_t n) const;
  /// Symbolic check that the sum over omega diverges.
  bool divergent_sum() const;
  /// limsup_n f(n), exact from the tail rule.
  Rational limsup() const;
};

std::string to_string(WeightSpec::Rule rule);

/// Consecutive nonempty intervals I_0, I_1, ... partitioning omega.
struct BlockSpec {
  enum class Rule { Constant, Linear };  // |I_n| = L or |I_n| = n + 1

  std::vector<std::uint64_t> table;  // explicit leading lengths, each >= 1
  Rule tail = Rule::Linear;
  std::uint64_t L = 1;

  std::uint64_t length(std::uint64_t n) const;
  std::uint64_t start(std::uint64_t n) const;
  /// Index of the block containing k, O(log k).
  std::uint64_t block_of(std::uint64_t k) const;
  bool lengths_unbounded() const { return tail == Rule::Linear; }
  void validate() const;
};

std::string to_string(BlockSpec::Rule rule);

struct BlockSubmeasureSpec {
  enum class Kind { NormalizedCounting, WeightedSum, WeightedMax };
  enum class Weight { InverseLength, Constant };  // w = 1/|I_n| or w = c

  BlockSpec blocks;
  Kind kind = Kind::NormalizedCounting;
  Weight weight = Weight::InverseLength;
  Rational c{1};

  Rational weight_in_block(std::uint64_t n) const;
  /// phi_n({k}) for k in I_n.
  Rational singleton(std::uint64_t n) const { return weight_in_block(n); }
  /// phi_n(S) from the elements of S inside I_n.
  Rational evaluate(std::uint64_t n, std::span<const std::uint64_t> elems_in_block) const;
  /// Largest singleton value over blocks n' >= n, as a tail rule: the limsup.
  Rational singleton_limsup() const;
  void validate() const;
};

std::string to_string(BlockSubmeasureSpec::Kind kind);

class IdealSpec;

namespace ideal_node {
struct Fin {};
struct DensityZero {};
struct Matrix { MatrixSpec a; };
struct Summable { WeightSpec f; };
struct GenDensity { BlockSubmeasureSpec phi; };
struct Lacunary { BlockSpec theta; };
struct FubiniEmptyFin {};
struct Restriction { std::shared_ptr<const IdealSpec> base; SetExpr e; };
}  // namespace ideal_node

/// Parametric ideal on omega.
class IdealSpec {
 public:
  using Node = std::variant<ideal_node::Fin, ideal_node::DensityZero, ideal_node::Matrix,
                            ideal_node::Summable, ideal_node::GenDensity, ideal_node::Lacunary,
                            ideal_node::FubiniEmptyFin, ideal_node::Restriction>;

  static IdealSpec fin() { return IdealSpec(ideal_node::Fin{}); }
  static IdealSpec density_zero() { return IdealSpec(ideal_node::DensityZero{}); }
  static IdealSpec matrix(MatrixSpec a) { return IdealSpec(ideal_node::Matrix{std::move(a)}); }
  static IdealSpec summable(WeightSpec f) { return IdealSpec(ideal_node::Summable{std::move(f)}); }
  static IdealSpec gen_density(BlockSubmeasureSpec phi) {
    return IdealSpec(ideal_node::GenDensity{std::move(phi)});
  }
  static IdealSpec lacunary(BlockSpec theta) {
    return IdealSpec(ideal_node::Lacunary{std::move(theta)});
  }
  static IdealSpec fubini_empty_fin() { return IdealSpec(ideal_node::FubiniEmptyFin{}); }
  static IdealSpec restriction(IdealSpec base, SetExpr e);

  const Node& node() const { return node_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&node_); }

  std::string name() const;

  /// Throws InvalidSpec when the family parameters do not define a proper
  /// ideal containing Fin.
  void validate() const;

 private:
  explicit IdealSpec(Node n) : node_(std::move(n)) {}
  Node node_;
};

enum class Verdict { In, Out, Unknown };
std::string to_string(Verdict v);

using Trace = std::vector<std::pair<std::uint64_t, double>>;

struct TriState {
  Verdict verdict = Verdict::Unknown;
  std::string certificate;  // "<rule-id>: <detail>" for In/Out
  Trace trace;              // sampled horizon functional for Unknown
};

enum class Tallness { Tall, NotTall, Unknown };
std::string to_string(Tallness t);

struct TallnessReport {
  Tallness verdict = Tallness::Unknown;
  std::string criterion;
  std::optional<SetExpr> witness;  // NotTall only
  std::optional<Rational> delta;   // detected limsup level for NotTall
  Trace trace;
};

/// Infinite subset selected inside a set, listed up to the horizon, together
/// with the selection rule that continues it and the decay certificate.
struct TallSubset {
  std::vector<std::uint64_t> elems;
  std::string rule;
  std::string certificate;
  Trace trace;
};

using ExactTrace = std::vector<std::pair<std::uint64_t, Rational>>;

/// The family's canonical functional at n = 0..rows-1.
ExactTrace density_trace(const IdealSpec& ideal, const SetExpr& s, std::uint64_t rows);

/// Numeric functional at params.rows sample points over [0, N): densities for
/// density-type families, tail sums for summable ideals, block measures for
/// block families. Values trend to 0 exactly when s trends into the ideal.
Trace horizon_trace(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params);

TriState member(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params = {});
TriState dual_member(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params = {});

TallnessReport is_tall(const IdealSpec& ideal, const HorizonParams& params = {});
SetExpr nontall_witness(const IdealSpec& ideal, const HorizonParams& params = {});

/// Greedy selection of an ideal-bound subset from sorted candidates.
/// Throws NotApplicable unless the ideal is Tall.
TallSubset select_tall_subset(const IdealSpec& ideal, std::span<const std::uint64_t> candidates,
                              const HorizonParams& params = {});

TallSubset tall_subset_witness(const IdealSpec& ideal, const SetExpr& s,
                               const HorizonParams& params = {});

/// Largest level v such that at least `recurrence` of the samples are >= v.
std::optional<Rational> recurring_level(std::span<const Rational> samples,
                                        const Rational& recurrence);

}  // namespace omega
