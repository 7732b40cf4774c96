#pragma once

// Shared corpora and brute-force oracles. The oracles re-derive each
// denotation directly and never call the library's evaluators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "omega/ideals.hpp"
#include "omega/seq.hpp"
#include "omega/setexpr.hpp"

namespace testsupport {

using omega::IdealSpec;
using omega::Rational;
using omega::SetExpr;
using omega::SparseRule;

inline bool oracle_square(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

inline bool oracle_power_of_two(std::uint64_t n) {
  if (n == 0) return false;
  while (n % 2 == 0) n /= 2;
  return n == 1;
}

inline bool oracle_factorial(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t k = 1; f <= n && k < 21; ++k) {
    f *= k;
    if (f == n) return true;
  }
  return n == 1;
}

inline std::uint32_t oracle_nu2(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint32_t v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

inline bool oracle_in(const SetExpr& s, std::uint64_t n) {
  using namespace omega::set_node;
  if (auto f = s.as<Finite>()) {
    for (auto e : f->elems)
      if (e == n) return true;
    return false;
  }
  if (auto r = s.as<Range>()) return r->lo <= n && n <= r->hi;
  if (auto ap = s.as<ArithProg>()) return n >= ap->a && (n - ap->a) % ap->d == 0;
  if (auto sp = s.as<Sparse>()) {
    switch (sp->rule) {
      case SparseRule::Squares: return oracle_square(n);
      case SparseRule::PowersOfTwo: return oracle_power_of_two(n);
      case SparseRule::Factorials: return oracle_factorial(n);
    }
  }
  if (auto lv = s.as<Nu2Level>()) return oracle_nu2(n) == lv->k;
  if (auto u = s.as<Union>()) {
    for (const auto& a : u->args)
      if (oracle_in(a, n)) return true;
    return false;
  }
  if (auto i = s.as<Intersect>()) {
    for (const auto& a : i->args)
      if (!oracle_in(a, n)) return false;
    return true;
  }
  return !oracle_in(*s.as<Complement>()->arg, n);
}

inline std::vector<SetExpr> set_corpus() {
  using S = SetExpr;
  auto sq = S::sparse(SparseRule::Squares);
  auto p2 = S::sparse(SparseRule::PowersOfTwo);
  auto fa = S::sparse(SparseRule::Factorials);
  return {
      S::finite({}),
      S::finite({5, 7}),
      S::finite({0, 1, 2}),
      S::range(0, 9),
      S::range(10, 200),
      S::arith_prog(0, 2),
      S::arith_prog(1, 2),
      S::arith_prog(3, 5),
      S::arith_prog(0, 1),
      sq,
      p2,
      fa,
      S::nu2_level(0),
      S::nu2_level(1),
      S::nu2_level(3),
      S::complement(S::finite({0, 1})),
      S::complement(sq),
      S::set_union({S::finite({2}), S::arith_prog(0, 4)}),
      S::intersect({S::arith_prog(0, 2), sq}),
      S::intersect({S::nu2_level(0), sq}),
      S::set_union({p2, fa}),
      S::complement(S::arith_prog(0, 3)),
      S::intersect({S::complement(p2), S::arith_prog(1, 4)}),
      S::set_union({S::range(5, 50), sq}),
      S::intersect({S::arith_prog(0, 3), S::nu2_level(2)}),
      S::set_union({S::intersect({S::arith_prog(1, 2), sq}), S::finite({4, 8})}),
      S::intersect({S::complement(S::range(0, 100)), p2}),
  };
}

/// 50 fixed pairs drawn from the set corpus.
inline std::vector<std::pair<SetExpr, SetExpr>> pair_corpus() {
  auto sets = set_corpus();
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> pick(0, sets.size() - 1);
  std::vector<std::pair<SetExpr, SetExpr>> out;
  while (out.size() < 50) out.emplace_back(sets[pick(rng)], sets[pick(rng)]);
  return out;
}

/// One representative per ideal family.
inline std::vector<IdealSpec> family_corpus() {
  omega::WeightSpec harmonic;
  omega::BlockSpec linear;
  omega::BlockSubmeasureSpec counting;
  counting.blocks = linear;
  return {
      IdealSpec::fin(),
      IdealSpec::density_zero(),
      IdealSpec::matrix(omega::MatrixSpec::cesaro()),
      IdealSpec::summable(harmonic),
      IdealSpec::gen_density(counting),
      IdealSpec::lacunary(linear),
      IdealSpec::fubini_empty_fin(),
      IdealSpec::restriction(IdealSpec::density_zero(), SetExpr::arith_prog(0, 2)),
  };
}

/// Families not covered by family_corpus: non-tall and bounded-block variants.
inline std::vector<IdealSpec> extra_families() {
  omega::WeightSpec one;
  one.tail = omega::WeightSpec::Rule::Constant;
  one.c = 1;
  omega::WeightSpec alternating;
  alternating.tail = omega::WeightSpec::Rule::Alternating;
  alternating.c = 1;
  omega::BlockSpec three;
  three.tail = omega::BlockSpec::Rule::Constant;
  three.L = 3;
  omega::BlockSubmeasureSpec weighted;
  weighted.blocks = omega::BlockSpec{};
  weighted.kind = omega::BlockSubmeasureSpec::Kind::WeightedSum;
  weighted.weight = omega::BlockSubmeasureSpec::Weight::Constant;
  weighted.c = Rational(1, 2);
  return {
      IdealSpec::matrix(omega::MatrixSpec::identity()),
      IdealSpec::summable(one),
      IdealSpec::summable(alternating),
      IdealSpec::lacunary(three),
      IdealSpec::gen_density(weighted),
  };
}

/// Random set: union of a few random progressions and a finite part.
inline SetExpr random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> small(0, 12), diff(1, 9), elem(0, 300);
  std::vector<SetExpr> parts;
  std::uint64_t aps = small(rng) % 3;
  for (std::uint64_t i = 0; i < aps; ++i) parts.push_back(SetExpr::arith_prog(small(rng), diff(rng)));
  std::vector<std::uint64_t> fin;
  for (std::uint64_t i = 0; i < small(rng); ++i) fin.push_back(elem(rng));
  std::sort(fin.begin(), fin.end());
  fin.erase(std::unique(fin.begin(), fin.end()), fin.end());
  parts.push_back(SetExpr::finite(fin));
  if (small(rng) % 2) parts.push_back(SetExpr::sparse(SparseRule::Squares));
  return SetExpr::set_union(parts);
}

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace testsupport
