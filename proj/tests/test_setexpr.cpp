#include <doctest.h>

#include "omega/error.hpp"
#include "omega/rational.hpp"
#include "omega/setexpr.hpp"
#include "support.hpp"

using namespace omega;
using testsupport::oracle_in;
using testsupport::q;

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("2/-4"), Error);
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(to_string(parse_rational("0.25")) == "1/4");
  CHECK(to_string(parse_rational("-1.5")) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(pow2(-3) == q(1, 8));
  CHECK(pow2(10) == q(1024));
  CHECK(floor(q(-7, 2)) == -4);
  CHECK(ceil(q(7, 2)) == 4);
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(q(1, 3), q(2, 3)) == q(1, 2));
  CHECK(simplest_between(q(49, 100), q(51, 100)) == q(1, 2));
  CHECK(simplest_between(q(3, 1), q(3, 1)) == q(3));
  CHECK(simplest_between(q(-5, 4), q(-3, 4)) == q(-1));
  for (long num = 1; num < 40; ++num) {
    Rational lo(num, 41), hi(num + 1, 41);
    lo.canonicalize();
    hi.canonicalize();
    Rational r = simplest_between(lo, hi);
    CHECK(r >= lo);
    CHECK(r <= hi);
    // Brute force: no fraction with a smaller denominator lies in [lo, hi].
    for (long d = 1; d < r.get_den().get_si(); ++d)
      for (long n = 0; n <= d; ++n) CHECK_FALSE((Rational(n, d) >= lo && Rational(n, d) <= hi));
  }
}

TEST_CASE("indicator examples") {
  CHECK_FALSE(indicator(SetExpr::arith_prog(0, 2), 7));
  CHECK(indicator(SetExpr::nu2_level(0), 5));
  CHECK_FALSE(indicator(SetExpr::complement(SetExpr::finite({0, 1})), 1));
  CHECK(indicator(SetExpr::nu2_level(0), 0));
  CHECK_FALSE(indicator(SetExpr::nu2_level(1), 0));
}

TEST_CASE("enumerate_prefix examples") {
  using V = std::vector<std::uint64_t>;
  CHECK(enumerate_prefix(SetExpr::sparse(SparseRule::Squares), 10) == V{0, 1, 4, 9});
  CHECK(enumerate_prefix(SetExpr::arith_prog(1, 2), 6) == V{1, 3, 5});
  CHECK(enumerate_prefix(SetExpr::set_union({SetExpr::finite({2}), SetExpr::arith_prog(0, 4)}), 8) ==
        V{0, 2, 4, 8});
  CHECK(enumerate_prefix(SetExpr::sparse(SparseRule::Factorials), 800) == V{1, 2, 6, 24, 120, 720});
}

TEST_CASE("count_prefix examples") {
  CHECK(count_prefix(SetExpr::arith_prog(0, 2), 99) == 50);
  CHECK(count_prefix(SetExpr::finite({}), 1000) == 0);
  CHECK(count_prefix(SetExpr::sparse(SparseRule::PowersOfTwo), 64) == 7);
}

TEST_CASE("construction rejects malformed payloads") {
  CHECK_THROWS_AS(SetExpr::arith_prog(0, 0), Error);
  CHECK_THROWS_AS(SetExpr::range(5, 4), Error);
  CHECK_THROWS_AS(SetExpr::nu2_level(63), Error);
  auto f = SetExpr::finite({9, 3, 3, 1});
  CHECK(f.as<set_node::Finite>()->elems == std::vector<std::uint64_t>{1, 3, 9});
}

TEST_CASE("indicator, enumeration and counting agree with the oracle") {
  constexpr std::uint64_t N = 10'000;
  for (const auto& s : testsupport::set_corpus()) {
    std::vector<std::uint64_t> expected;
    std::uint64_t running = 0;
    for (std::uint64_t n = 0; n <= N; ++n) {
      bool in = oracle_in(s, n);
      REQUIRE(indicator(s, n) == in);
      if (in) {
        expected.push_back(n);
        ++running;
      }
      if (n <= 300 || n % 997 == 0) REQUIRE(count_prefix(s, n) == running);
    }
    CHECK(count_prefix(s, N) == running);
    CHECK(enumerate_prefix(s, N) == expected);
    auto first = first_elements(s, 25, N);
    std::vector<std::uint64_t> head(expected.begin(),
                                    expected.begin() + std::min<std::size_t>(25, expected.size()));
    CHECK(first == head);
  }
}

TEST_CASE("De Morgan over the pair corpus") {
  for (const auto& [a, b] : testsupport::pair_corpus()) {
    auto lhs = SetExpr::complement(SetExpr::set_union({a, b}));
    auto rhs = SetExpr::intersect({SetExpr::complement(a), SetExpr::complement(b)});
    for (std::uint64_t n = 0; n <= 1000; ++n) REQUIRE(indicator(lhs, n) == indicator(rhs, n));
  }
}

TEST_CASE("arithmetic progression density bound") {
  for (std::uint64_t a : {0u, 1u, 5u, 17u})
    for (std::uint64_t d : {1u, 2u, 3u, 7u, 10u}) {
      auto s = SetExpr::arith_prog(a, d);
      for (std::uint64_t N = a; N < 5000; N += 37) {
        auto lhs = static_cast<std::int64_t>(count_prefix(s, N) * d);
        auto diff = lhs - static_cast<std::int64_t>(N);
        CHECK(std::llabs(diff) <= static_cast<std::int64_t>(d + a));
      }
    }
}

TEST_CASE("cell structure matches brute-force densities") {
  constexpr std::uint64_t N = 1'000'000;
  for (const auto& s : testsupport::set_corpus()) {
    auto cells = analyze_cells(s);
    REQUIRE(cells.has_value());
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n <= N; ++n) count += oracle_in(s, n);
    double brute = static_cast<double>(count) / static_cast<double>(N + 1);
    CHECK(std::abs(brute - to_double(cells->density())) < 0.005);
    // Finite and cofinite flags against the tail of the window.
    if (cells->is_finite())
      for (std::uint64_t n = cells->threshold; n < cells->threshold + 5000; ++n) REQUIRE_FALSE(oracle_in(s, n));
    if (cells->is_cofinite())
      for (std::uint64_t n = cells->threshold; n < cells->threshold + 5000; ++n) REQUIRE(oracle_in(s, n));
  }
}

TEST_CASE("cell analysis gives up on huge periods") {
  CHECK_FALSE(analyze_cells(SetExpr::arith_prog(0, 300'000)).has_value());
  CHECK(analyze_cells(SetExpr::arith_prog(0, 1000)).has_value());
}
