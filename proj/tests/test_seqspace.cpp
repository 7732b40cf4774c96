#include <doctest.h>

#include <random>

#include "omega/error.hpp"
#include "omega/seqspace.hpp"
#include "support.hpp"

using namespace omega;
using testsupport::q;

namespace {

// Independent evaluator walking the node structure.
Rational oracle_eval(const Seq& x, std::uint64_t n) {
  using namespace seq_node;
  if (auto f = x.as<FiniteSupport>()) {
    for (const auto& [i, v] : f->entries)
      if (i == n) return v;
    return 0;
  }
  if (auto m = x.as<Named>()) {
    switch (m->rule) {
      case NamedRule::Constant: return m->c;
      case NamedRule::Unit: return n == m->k ? 1 : 0;
      case NamedRule::PowersOfTwo: {
        mpz_class p = 1;
        for (std::uint64_t i = 0; i < n; ++i) p *= 2;
        return Rational(p);
      }
      case NamedRule::Identity: return Rational(mpz_class(std::to_string(n)));
      case NamedRule::Harmonic: return Rational(1, n + 1);
    }
  }
  if (auto o = x.as<Overlay>()) {
    for (const auto& [i, v] : o->patch)
      if (i == n) return v;
    return oracle_eval(*o->base, n);
  }
  if (auto m = x.as<Masked>()) return testsupport::oracle_in(m->set, n) ? oracle_eval(*m->base, n) : Rational(0);
  auto s = x.as<Scaled>();
  Rational v = s->factor * oracle_eval(*s->base, n);
  return v;
}

Verdict limit_verdict(const IdealSpec& ideal, const Seq& x, const Rational& eta, const Rational& eps) {
  return ideal_limit_estimate(ideal, x, eta, eps).verdict;
}

std::vector<Seq> seq_corpus() {
  std::vector<Seq> out = {
      Seq::finite_support({{1, q(2)}, {4, q(-1)}}),
      Seq::constant(q(3)),
      Seq::constant(q(-1, 2)),
      Seq::constant(0),
      Seq::unit(7),
      Seq::powers_of_two(),
      Seq::identity(),
      Seq::harmonic(),
      Seq::overlay(Seq::constant(1), {{0, q(5)}, {3, q(0)}}),
      Seq::overlay(Seq::harmonic(), {{2, q(9)}}),
      Seq::indicator_of(SetExpr::sparse(SparseRule::Squares)),
      Seq::indicator_of(SetExpr::arith_prog(0, 2)),
      Seq::masked(Seq::identity(), SetExpr::sparse(SparseRule::PowersOfTwo)),
      Seq::masked(Seq::harmonic(), SetExpr::complement(SetExpr::arith_prog(1, 3))),
      Seq::scaled(q(-3), Seq::harmonic()),
      Seq::scaled(q(1, 4), Seq::powers_of_two()),
      Seq::scaled(q(2), Seq::indicator_of(SetExpr::nu2_level(1))),
      Seq::overlay(Seq::masked(Seq::constant(q(7, 3)), SetExpr::arith_prog(1, 4)), {{1, q(1)}, {6, q(-2)}}),
  };
  return out;
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(Seq::powers_of_two(), 5) == 32);
  CHECK(eval(Seq::finite_support({{3, q(7, 2)}}), 4) == 0);
  CHECK(eval(Seq::overlay(Seq::constant(1), {{0, q(5)}}), 0) == 5);
  CHECK(eval(Seq::harmonic(), 3) == q(1, 4));
  CHECK_THROWS_AS(Seq::finite_support({{3, q(1)}, {3, q(2)}}), Error);
  auto unsorted = Seq::finite_support({{4, q(1)}, {3, q(2)}});
  CHECK(unsorted.as<seq_node::FiniteSupport>()->entries.front().first == 3);
  // Zero entries are dropped from finite supports.
  CHECK(Seq::finite_support({{2, q(0)}, {5, q(1)}}).as<seq_node::FiniteSupport>()->entries.size() == 1);
}

TEST_CASE("eval matches the independent evaluator") {
  for (const auto& x : seq_corpus())
    for (std::uint64_t n = 0; n < 300; ++n) REQUIRE(eval(x, n) == oracle_eval(x, n));
}

TEST_CASE("support_prefix examples") {
  CHECK(same_expr(support_prefix(Seq::finite_support({{1, q(2)}, {4, q(-1)}}), 10), SetExpr::finite({1, 4})));
  CHECK(same_expr(support_prefix(Seq::constant(0), 100), SetExpr::finite({})));
  CHECK(same_expr(support_prefix(Seq::overlay(Seq::constant(0), {{2, q(1)}, {9, q(1)}}), 5), SetExpr::finite({2})));
}

TEST_CASE("exceedance sets match the oracle") {
  const std::vector<std::pair<Rational, Rational>> probes = {
      {q(0), q(0)}, {q(0), q(1, 2)}, {q(1), q(1, 10)}, {q(3), q(1)}, {q(-1, 2), q(1, 3)},
      {q(2), q(0)}, {q(0), q(1, 1000)}, {q(100), q(50)}};
  for (const auto& x : seq_corpus()) {
    for (const auto& [eta, eps] : probes) {
      SetExpr e = exceedance_set(x, eta, eps);
      for (std::uint64_t n = 0; n < 2000; ++n) {
        Rational d = oracle_eval(x, n) - eta;
        bool expected = abs(d) > eps;
        REQUIRE(indicator(e, n) == expected);
      }
    }
  }
}

TEST_CASE("ideal_limit_estimate examples") {
  auto on_squares = Seq::indicator_of(SetExpr::sparse(SparseRule::Squares));
  CHECK(limit_verdict(IdealSpec::density_zero(), on_squares, 0, q(1, 2)) == Verdict::In);
  CHECK(limit_verdict(IdealSpec::fin(), Seq::harmonic(), 0, q(1, 10)) == Verdict::In);
  CHECK(same_expr(exceedance_set(Seq::harmonic(), 0, q(1, 10)), SetExpr::range(0, 8)));
  CHECK(limit_verdict(IdealSpec::density_zero(), Seq::indicator_of(SetExpr::arith_prog(0, 2)), 0,
                             q(1, 2)) == Verdict::Out);
  CHECK_THROWS_AS(limit_verdict(IdealSpec::fin(), Seq::harmonic(), 0, 0), Error);
}

TEST_CASE("epsilon monotonicity") {
  const std::vector<Rational> ladder = {q(1, 1000), q(1, 100), q(1, 10), q(1, 2), q(1), q(5), q(100)};
  for (const auto& ideal : testsupport::family_corpus())
    for (const auto& x : seq_corpus())
      for (const Rational& eta : {q(0), q(1), q(3)}) {
        bool certified = false;
        for (const auto& eps : ladder) {
          auto v = limit_verdict(ideal, x, eta, eps);
          if (certified) CHECK(v != Verdict::Out);
          certified = certified || v == Verdict::In;
        }
      }
}

TEST_CASE("Fin limits coincide with ordinary convergence") {
  // Ordinary limits of the corpus, where they exist.
  struct Case { Seq x; std::optional<Rational> limit; };
  std::vector<Case> cases = {
      {Seq::constant(q(3)), q(3)},
      {Seq::unit(7), q(0)},
      {Seq::harmonic(), q(0)},
      {Seq::scaled(q(-3), Seq::harmonic()), q(0)},
      {Seq::overlay(Seq::constant(1), {{0, q(5)}}), q(1)},
      {Seq::powers_of_two(), std::nullopt},
      {Seq::identity(), std::nullopt},
      {Seq::indicator_of(SetExpr::arith_prog(0, 2)), std::nullopt},
  };
  for (const auto& c : cases) {
    for (const Rational& eta : {q(0), q(1), q(3)}) {
      const bool converges = c.limit && *c.limit == eta;
      for (const auto& eps : {q(1, 1000), q(1, 3)}) {
        auto v = limit_verdict(IdealSpec::fin(), c.x, eta, eps);
        if (converges) CHECK(v == Verdict::In);
      }
      if (!converges) CHECK(limit_verdict(IdealSpec::fin(), c.x, eta, q(1, 1000)) == Verdict::Out);
    }
  }
}

TEST_CASE("classify_space examples") {
  auto sq = SetExpr::sparse(SparseRule::Squares);
  auto r = classify_space(IdealSpec::density_zero(), Seq::masked(Seq::identity(), sq));
  CHECK(r.c00.verdict == Verdict::In);
  CHECK(r.linf.verdict == Verdict::In);
  r = classify_space(IdealSpec::fin(), Seq::powers_of_two());
  CHECK(r.linf.verdict == Verdict::Out);
  r = classify_space(IdealSpec::fin(), Seq::constant(q(3)));
  CHECK(r.c.verdict == Verdict::In);
  CHECK(*r.limit == 3);
  CHECK(r.c0.verdict == Verdict::Out);
}

TEST_CASE("finite supports lie in c00 for every family") {
  std::mt19937_64 rng(3);
  auto families = testsupport::family_corpus();
  for (const auto& f : testsupport::extra_families()) families.push_back(f);
  for (int i = 0; i < 10; ++i) {
    SeqEntries e;
    std::uint64_t idx = rng() % 5;
    for (int k = 0; k < 6; ++k) {
      long num = static_cast<long>(rng() % 9) + 1;
      e.push_back({idx, q(rng() % 2 ? num : -num, 3)});
      idx += 1 + rng() % 50;
    }
    Seq x = Seq::finite_support(e);
    for (const auto& ideal : families) {
      auto r = classify_space(ideal, x);
      CHECK(r.c00.verdict == Verdict::In);
      CHECK(r.c0.verdict == Verdict::In);
      CHECK(r.c.verdict == Verdict::In);
      CHECK(r.linf.verdict == Verdict::In);
    }
  }
}

TEST_CASE("space flags are monotone") {
  auto families = testsupport::family_corpus();
  for (const auto& ideal : families)
    for (const auto& x : seq_corpus()) {
      auto r = classify_space(ideal, x);
      const Verdict chain[] = {r.c00.verdict, r.c0.verdict, r.c.verdict, r.linf.verdict};
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (chain[i] == Verdict::In) CHECK(chain[j] == Verdict::In);
      if (r.c.verdict == Verdict::In) CHECK(r.limit.has_value());
    }
}

TEST_CASE("classify_indicator examples") {
  auto r = classify_indicator(IdealSpec::density_zero(), SetExpr::sparse(SparseRule::Squares));
  CHECK(r.verdict == IndicatorClass::Convergent);
  CHECK(*r.limit == 0);
  CHECK(classify_indicator(IdealSpec::density_zero(), SetExpr::arith_prog(0, 2)).verdict ==
        IndicatorClass::NotConvergent);
  r = classify_indicator(IdealSpec::fin(), SetExpr::complement(SetExpr::finite({0, 1, 2})));
  CHECK(r.verdict == IndicatorClass::Convergent);
  CHECK(*r.limit == 1);
}

TEST_CASE("indicator classification agrees with classify_space") {
  for (const auto& ideal : testsupport::family_corpus())
    for (const auto& a : testsupport::set_corpus()) {
      auto ind = classify_indicator(ideal, a);
      auto sp = classify_space(ideal, Seq::indicator_of(a));
      switch (ind.verdict) {
        case IndicatorClass::Convergent:
          CHECK(sp.c.verdict == Verdict::In);
          CHECK(*sp.limit == *ind.limit);
          break;
        case IndicatorClass::NotConvergent:
          CHECK(sp.c.verdict == Verdict::Out);
          break;
        case IndicatorClass::Unknown:
          CHECK(sp.c.verdict != Verdict::In);
          break;
      }
    }
}
