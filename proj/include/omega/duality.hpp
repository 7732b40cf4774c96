#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omega/ideals.hpp"
#include "omega/seq.hpp"

namespace omega {

/// Generator of the family B of finitely supported sequences.
class BFamily {
 public:
  enum class Kind { Diagonal, PositiveWitness, Explicit };

  /// x_n = 2^n e_n
  static BFamily diagonal();
  /// x_n = sum_{i <= n} 2^{-i} e_{s_i} over the increasing enumeration of s.
  static BFamily positive_witness(SetExpr s);
  static BFamily explicit_list(std::vector<SeqEntries> elements);

  Kind kind() const { return kind_; }
  const std::optional<SetExpr>& set() const { return set_; }
  const std::vector<SeqEntries>& elements() const { return elements_; }

  /// Number of elements, when the family is finite.
  std::optional<std::uint64_t> size() const;
  /// The first `count` elements (fewer for a short explicit list).
  std::vector<SeqEntries> prefix(std::uint64_t count) const;
  SeqEntries element(std::uint64_t n) const;

 private:
  BFamily() = default;
  Kind kind_ = Kind::Diagonal;
  std::optional<SetExpr> set_;
  std::vector<SeqEntries> elements_;
};

struct DualPair {
  BFamily B;
  Seq y;
};

/// x . y = sum_n x(n) y(n) for finitely supported x.
Rational pair(const SeqEntries& x, const Seq& y);

/// B = {sum_{i<=n} 2^{-i} e_{s_i}}, y = 2^n. Throws NotInfinite for a Finite
/// variant or when s has fewer than depth+1 elements within reach.
DualPair positive_witness(const SetExpr& s, std::uint64_t depth);

/// Enumeration s_0 < s_1 < ... of a positive witness set, to the given count.
std::vector<std::uint64_t> witness_enumeration(const SetExpr& s, std::uint64_t count);

struct BoundednessReport {
  bool passed = false;
  Rational bound;        // sum_{i in F} |v(i)| + 2M
  Rational max_pairing;  // max_{n <= depth} |B_n . v|
  std::vector<std::uint64_t> F;
  Verdict declared_set = Verdict::Unknown;  // member(ideal, a)
};

BoundednessReport verify_boundedness(const DualPair& witness, const Seq& v, const IdealSpec& ideal,
                                     const Rational& M, const SetExpr& a, std::uint64_t depth);

struct Subfamily {
  std::vector<std::uint64_t> indices;  // positions in B
  std::vector<SeqEntries> elements;
};

/// Greedy scan of B's first scan_limit elements for x_0, x_1, ... with
/// |x_j . y| >= threshold_scale * 2^j. Throws NotFound.
Subfamily select_unbounded_subfamily(const DualPair& p, std::uint64_t count,
                                     std::uint64_t scan_limit,
                                     const Rational& threshold_scale = Rational(1));

enum class RecursionMode { Corrected, PaperLiteral };
std::string to_string(RecursionMode mode);

struct AdversaryTrace {
  RecursionMode mode = RecursionMode::Corrected;
  std::uint64_t scan = 0;  // B prefix length used
  // Per step n of the k-table.
  std::vector<std::uint64_t> m, s, k, s_tilde;
  std::vector<bool> repaired;  // m_n bumped away from the formula value
  // Selected positions in the k-table and kappa at the chosen coordinates.
  std::vector<std::uint64_t> t;
  std::vector<Rational> kappa;
  std::vector<std::uint64_t> S;  // k_{t_0} < k_{t_1} < ...
  std::string S_rule;
  std::string S_certificate;
  SeqEntries v;
  std::vector<Rational> pairings;  // x_{m_{t_n}} . v for n = 0..steps
  Trace S_trace;                   // horizon functional of S under the ideal
  // Coordinate whose kappa diverges over the scan, with v = e_coordinate.
  std::optional<std::uint64_t> first_case;
};

AdversaryTrace adversary_construct(const IdealSpec& ideal, const DualPair& p, std::uint64_t steps,
                                   const HorizonParams& params = {},
                                   RecursionMode mode = RecursionMode::Corrected);

struct DominationRefutation {
  Rational C;
  std::uint64_t n;   // element of S with |x(n)| > C |y(n)|
  Rational x_value;  // x(n)
  Rational bound;    // C |y(n)|
};

struct BKCounterexample {
  Seq x = Seq::finite_support({});    // prefix through the horizon and the refutations
  std::optional<SetExpr> S;           // symbolic support when available
  std::vector<std::uint64_t> S_prefix;
  TriState support;                   // membership of the support in the ideal
  bool ratio_exact = false;           // x(n) / (|y(n)| + 1) == n along S
  std::vector<DominationRefutation> refutations;  // C = 2^0 .. 2^20
};

BKCounterexample bk_counterexample(const IdealSpec& ideal, const Seq& y,
                                   const HorizonParams& params = {});

}  // namespace omega
