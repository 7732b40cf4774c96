#include <doctest.h>

#include <random>

#include "omega/error.hpp"
#include "omega/seqspace.hpp"
#include "omega/summability.hpp"
#include "support.hpp"

using namespace omega;
using testsupport::q;

namespace {

MatrixSpec random_stochastic(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<Rational>> rows(n);
  for (auto& row : rows) {
    std::vector<long> raw(n);
    long total = 0;
    for (auto& r : raw) total += (r = static_cast<long>(rng() % 10));
    if (total == 0) raw[0] = total = 1;
    for (long r : raw) row.push_back(q(r, total));
  }
  return MatrixSpec::explicit_rows(rows, MatrixSpec::Tail::RepeatLast);
}

Seq random_finite_support(std::mt19937_64& rng) {
  SeqEntries e;
  std::uint64_t idx = rng() % 10;
  const int len = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < len; ++i) {
    long num = static_cast<long>(rng() % 21) - 10;
    if (num == 0) num = 1;
    e.push_back({idx, q(num, 1 + static_cast<long>(rng() % 7))});
    idx += 1 + rng() % 15;
  }
  return Seq::finite_support(e);
}

}  // namespace

TEST_CASE("regularity") {
  CHECK(check_regularity(MatrixSpec::cesaro()).verdict == Verdict::In);
  CHECK(check_regularity(MatrixSpec::identity()).verdict == Verdict::In);
  std::mt19937_64 rng(11);
  auto r = check_regularity(random_stochastic(rng, 20));
  // The repeated last row keeps some column bounded away from 0.
  CHECK(r.verdict == Verdict::Out);
  CHECK_FALSE(r.certificate.empty());
  auto tailed = MatrixSpec::explicit_rows({{q(1)}, {q(1, 2), q(1, 2)}}, MatrixSpec::Tail::CesaroTail);
  CHECK(check_regularity(tailed).verdict == Verdict::In);
  auto zero_row = MatrixSpec::explicit_rows({{q(0), q(0)}}, MatrixSpec::Tail::RepeatLast);
  CHECK(check_regularity(zero_row).verdict == Verdict::Out);
}

TEST_CASE("transform_prefix examples") {
  CHECK(transform_prefix(MatrixSpec::cesaro(), Seq::constant(1), 3) == std::vector<Rational>{1, 1, 1});
  CHECK(transform_prefix(MatrixSpec::cesaro(), Seq::finite_support({{0, q(1)}}), 3) ==
        std::vector<Rational>{1, q(1, 2), q(1, 3)});
  CHECK(transform_prefix(MatrixSpec::identity(), Seq::identity(), 4) == std::vector<Rational>{0, 1, 2, 3});
}

TEST_CASE("Cesaro transform matches prefix averages") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    Seq x = random_finite_support(rng);
    const auto& entries = x.as<seq_node::FiniteSupport>()->entries;
    auto y = transform_prefix(MatrixSpec::cesaro(), x, 150);
    for (std::uint64_t n = 0; n < 150; ++n) {
      Rational sum = 0;
      for (const auto& [k, v] : entries)
        if (k <= n) sum += v;
      Rational avg = sum / Rational(n + 1);
      avg.canonicalize();
      REQUIRE(y[n] == avg);
    }
  }
}

TEST_CASE("explicit rows with tails") {
  auto a = MatrixSpec::explicit_rows({{q(1, 2), q(1, 2)}, {q(0), q(1, 4), q(3, 4)}}, MatrixSpec::Tail::RepeatLast);
  auto y = transform_prefix(a, Seq::identity(), 4);
  CHECK(y == std::vector<Rational>{q(1, 2), q(7, 4), q(7, 4), q(7, 4)});
  auto c = MatrixSpec::explicit_rows({{q(1)}}, MatrixSpec::Tail::CesaroTail);
  CHECK(transform_prefix(c, Seq::identity(), 3) == std::vector<Rational>{0, q(1, 2), 1});
}

TEST_CASE("Pringsheim estimates") {
  HorizonParams p;
  auto r = pringsheim_zero_estimate(MatrixSpec::cesaro(), p);
  CHECK(r.verdict == Verdict::In);
  REQUIRE_FALSE(r.trace.empty());
  for (const auto& [n0, tau] : r.trace) CHECK(tau == 1.0 / static_cast<double>(n0 + 1));
  r = pringsheim_zero_estimate(MatrixSpec::identity(), p);
  CHECK(r.verdict == Verdict::Out);
  CHECK(r.certificate.find("delta=1") != std::string::npos);
  std::mt19937_64 rng(5);
  CHECK(pringsheim_zero_estimate(random_stochastic(rng, 20), p).verdict == Verdict::In);
}

TEST_CASE("seminorm examples") {
  auto s = eval_seminorms(MatrixSpec::cesaro(), Seq::constant(1), 2);
  CHECK(s.p == 1);
  CHECK(s.q == 1);
  s = eval_seminorms(MatrixSpec::cesaro(), Seq::finite_support({{0, q(1)}}), 1);
  CHECK(s.p == 0);
  CHECK(s.q == q(1, 2));
  s = eval_seminorms(MatrixSpec::identity(), Seq::powers_of_two(), 3);
  CHECK(s.p == 8);
  CHECK(s.q == 8);
  CHECK(s.stabilized);
}

TEST_CASE("q dominates the transform") {
  std::mt19937_64 rng(8);
  std::vector<Seq> xs = {Seq::harmonic(), Seq::scaled(q(-1), Seq::identity()),
                         Seq::indicator_of(SetExpr::arith_prog(1, 3))};
  for (int i = 0; i < 10; ++i) xs.push_back(random_finite_support(rng));
  std::vector<MatrixSpec> mats = {MatrixSpec::cesaro(), MatrixSpec::identity(), random_stochastic(rng, 6)};
  HorizonParams p;
  p.N = 200;
  p.rows = 50;
  for (const auto& a : mats)
    for (const auto& x : xs) {
      auto y = transform_prefix(a, x, 40);
      for (std::uint64_t n = 0; n < 40; ++n) CHECK(eval_seminorms(a, x, n, p).q >= abs(y[n]));
    }
}

TEST_CASE("regular matrices preserve constants") {
  for (const auto& a : {MatrixSpec::cesaro(), MatrixSpec::identity()})
    for (const Rational& c : {q(0), q(3), q(-7, 2)}) {
      auto y = transform_prefix(a, Seq::constant(c), 500);
      for (std::size_t n = 400; n < 500; ++n) CHECK(y[n] == c);
    }
}

TEST_CASE("cA membership examples") {
  auto evens = Seq::indicator_of(SetExpr::arith_prog(0, 2));
  auto r = cA_membership_estimate(MatrixSpec::cesaro(), IdealSpec::fin(), evens);
  CHECK(r.result.verdict == Verdict::In);
  CHECK(*r.limit == q(1, 2));
  r = cA_membership_estimate(MatrixSpec::identity(), IdealSpec::density_zero(),
                             Seq::indicator_of(SetExpr::sparse(SparseRule::Squares)));
  CHECK(r.result.verdict == Verdict::In);
  CHECK(*r.limit == 0);
  r = cA_membership_estimate(MatrixSpec::cesaro(), IdealSpec::fin(), Seq::powers_of_two());
  CHECK(r.result.verdict != Verdict::In);
}

TEST_CASE("cA membership is consistent with matrix ideals") {
  for (const auto& a : {MatrixSpec::cesaro(), MatrixSpec::identity()}) {
    auto ideal = IdealSpec::matrix(a);
    for (const auto& s : testsupport::set_corpus()) {
      auto m = member(ideal, s);
      auto t = cA_membership_estimate(a, IdealSpec::fin(), Seq::indicator_of(s));
      if (m.verdict == Verdict::In) {
        CHECK(t.result.verdict != Verdict::Out);
        if (t.result.verdict == Verdict::In) CHECK(*t.limit == 0);
      }
      if (m.verdict == Verdict::Out && t.result.verdict == Verdict::In) CHECK(*t.limit != 0);
    }
  }
}
