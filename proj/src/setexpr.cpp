#include "omega/setexpr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "omega/error.hpp"

namespace omega {

namespace {

using namespace set_node;

constexpr std::array<std::uint64_t, 20> kFactorials = {
    1ULL,
    2ULL,
    6ULL,
    24ULL,
    120ULL,
    720ULL,
    5040ULL,
    40320ULL,
    362880ULL,
    3628800ULL,
    39916800ULL,
    479001600ULL,
    6227020800ULL,
    87178291200ULL,
    1307674368000ULL,
    20922789888000ULL,
    355687428096000ULL,
    6402373705728000ULL,
    121645100408832000ULL,
    2432902008176640000ULL,
};

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool sparse_contains(SparseRule rule, std::uint64_t n) {
  switch (rule) {
    case SparseRule::Squares: {
      auto r = isqrt(n);
      return r * r == n;
    }
    case SparseRule::PowersOfTwo:
      return n != 0 && (n & (n - 1)) == 0;
    case SparseRule::Factorials:
      return std::binary_search(kFactorials.begin(), kFactorials.end(), n);
  }
  return false;
}

std::uint64_t sparse_count(SparseRule rule, std::uint64_t N) {
  switch (rule) {
    case SparseRule::Squares:
      return isqrt(N) + 1;
    case SparseRule::PowersOfTwo:
      return N == 0 ? 0 : static_cast<std::uint64_t>(63 - __builtin_clzll(N)) + 1;
    case SparseRule::Factorials:
      return static_cast<std::uint64_t>(
          std::upper_bound(kFactorials.begin(), kFactorials.end(), N) - kFactorials.begin());
  }
  return 0;
}

std::vector<std::uint64_t> sparse_enumerate(SparseRule rule, std::uint64_t N) {
  std::vector<std::uint64_t> out;
  switch (rule) {
    case SparseRule::Squares:
      for (std::uint64_t m = 0, lim = isqrt(N); m <= lim; ++m) out.push_back(m * m);
      break;
    case SparseRule::PowersOfTwo:
      for (std::uint64_t p = 1; p <= N && p != 0; p <<= 1) out.push_back(p);
      break;
    case SparseRule::Factorials:
      for (auto f : kFactorials)
        if (f <= N) out.push_back(f);
      break;
  }
  return out;
}

std::uint64_t nu2_level_count(std::uint32_t k, std::uint64_t N) {
  if (k >= 63) return k == 0 ? 1 : 0;
  std::uint64_t lo = N >> k;
  std::uint64_t hi = N >> (k + 1);
  return lo - hi + (k == 0 ? 1 : 0);
}

}  // namespace

std::string to_string(SparseRule rule) {
  switch (rule) {
    case SparseRule::Squares: return "squares";
    case SparseRule::PowersOfTwo: return "powersOfTwo";
    case SparseRule::Factorials: return "factorials";
  }
  return "?";
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Plain: return "plain";
    case CellKind::SquareOnly: return "squares";
    case CellKind::OddPowerOfTwo: return "odd powers of two";
    case CellKind::PowerOfFour: return "powers of four";
    case CellKind::Factorial: return "factorials";
  }
  return "?";
}

SetExpr SetExpr::finite(std::vector<std::uint64_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return SetExpr(Finite{std::move(elems)});
}

SetExpr SetExpr::range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) fail(ErrorKind::InvalidSpec, "range requires lo <= hi");
  return SetExpr(Range{lo, hi});
}

SetExpr SetExpr::arith_prog(std::uint64_t a, std::uint64_t d) {
  if (d == 0) fail(ErrorKind::InvalidSpec, "arithmetic progression requires d >= 1");
  return SetExpr(ArithProg{a, d});
}

SetExpr SetExpr::sparse(SparseRule rule) { return SetExpr(Sparse{rule}); }

SetExpr SetExpr::nu2_level(std::uint32_t k) {
  if (k > 62) fail(ErrorKind::InvalidSpec, "nu2 level must be <= 62");
  return SetExpr(Nu2Level{k});
}

SetExpr SetExpr::set_union(std::vector<SetExpr> args) { return SetExpr(Union{std::move(args)}); }

SetExpr SetExpr::intersect(std::vector<SetExpr> args) {
  return SetExpr(Intersect{std::move(args)});
}

SetExpr SetExpr::complement(SetExpr arg) {
  return SetExpr(Complement{std::make_shared<const SetExpr>(std::move(arg))});
}

std::uint32_t nu2(std::uint64_t n) {
  return n == 0 ? 0 : static_cast<std::uint32_t>(__builtin_ctzll(n));
}

bool indicator(const SetExpr& s, std::uint64_t n) {
  return std::visit(
      [n](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return std::binary_search(v.elems.begin(), v.elems.end(), n);
        } else if constexpr (std::is_same_v<T, Range>) {
          return n >= v.lo && n <= v.hi;
        } else if constexpr (std::is_same_v<T, ArithProg>) {
          return n >= v.a && (n - v.a) % v.d == 0;
        } else if constexpr (std::is_same_v<T, Sparse>) {
          return sparse_contains(v.rule, n);
        } else if constexpr (std::is_same_v<T, Nu2Level>) {
          return nu2(n) == v.k;
        } else if constexpr (std::is_same_v<T, Union>) {
          return std::any_of(v.args.begin(), v.args.end(),
                             [n](const SetExpr& a) { return indicator(a, n); });
        } else if constexpr (std::is_same_v<T, Intersect>) {
          return std::all_of(v.args.begin(), v.args.end(),
                             [n](const SetExpr& a) { return indicator(a, n); });
        } else {
          return !indicator(*v.arg, n);
        }
      },
      s.node());
}

std::vector<std::uint64_t> enumerate_prefix(const SetExpr& s, std::uint64_t N) {
  std::vector<std::uint64_t> out;
  if (auto f = s.as<Finite>()) {
    for (auto e : f->elems)
      if (e <= N) out.push_back(e);
    return out;
  }
  if (auto r = s.as<Range>()) {
    for (std::uint64_t n = r->lo; n <= std::min(r->hi, N); ++n) out.push_back(n);
    return out;
  }
  if (auto ap = s.as<ArithProg>()) {
    for (std::uint64_t n = ap->a; n <= N; n += ap->d) out.push_back(n);
    return out;
  }
  if (auto sp = s.as<Sparse>()) return sparse_enumerate(sp->rule, N);
  for (std::uint64_t n = 0; n <= N; ++n)
    if (indicator(s, n)) out.push_back(n);
  return out;
}

std::uint64_t count_prefix(const SetExpr& s, std::uint64_t N) {
  if (auto f = s.as<Finite>())
    return static_cast<std::uint64_t>(
        std::upper_bound(f->elems.begin(), f->elems.end(), N) - f->elems.begin());
  if (auto r = s.as<Range>()) return N < r->lo ? 0 : std::min(r->hi, N) - r->lo + 1;
  if (auto ap = s.as<ArithProg>()) return N < ap->a ? 0 : (N - ap->a) / ap->d + 1;
  if (auto sp = s.as<Sparse>()) return sparse_count(sp->rule, N);
  if (auto lv = s.as<Nu2Level>()) return nu2_level_count(lv->k, N);
  if (auto c = s.as<Complement>()) return (N + 1) - count_prefix(*c->arg, N);
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n <= N; ++n) count += indicator(s, n) ? 1 : 0;
  return count;
}

std::vector<std::uint64_t> first_elements(const SetExpr& s, std::size_t count,
                                          std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (auto ap = s.as<ArithProg>()) {
    for (std::uint64_t n = ap->a; n <= limit && out.size() < count; n += ap->d) out.push_back(n);
    return out;
  }
  if (s.as<Sparse>() || s.as<Finite>()) {
    out = enumerate_prefix(s, limit);
    if (out.size() > count) out.resize(count);
    return out;
  }
  for (std::uint64_t n = 0; n <= limit && out.size() < count; ++n)
    if (indicator(s, n)) out.push_back(n);
  return out;
}

bool same_expr(const SetExpr& a, const SetExpr& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&b](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const T& vb = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, Finite>) return va.elems == vb.elems;
        else if constexpr (std::is_same_v<T, Range>) return va.lo == vb.lo && va.hi == vb.hi;
        else if constexpr (std::is_same_v<T, ArithProg>) return va.a == vb.a && va.d == vb.d;
        else if constexpr (std::is_same_v<T, Sparse>) return va.rule == vb.rule;
        else if constexpr (std::is_same_v<T, Nu2Level>) return va.k == vb.k;
        else if constexpr (std::is_same_v<T, Complement>) return same_expr(*va.arg, *vb.arg);
        else {
          if (va.args.size() != vb.args.size()) return false;
          for (std::size_t i = 0; i < va.args.size(); ++i)
            if (!same_expr(va.args[i], vb.args[i])) return false;
          return true;
        }
      },
      a.node());
}

// ---------------------------------------------------------------------------

namespace {

struct StructureScan {
  std::uint64_t threshold = 3;
  std::uint64_t period = 1;
  bool overflow = false;

  void need_period(std::uint64_t m) {
    if (overflow) return;
    std::uint64_t g = std::gcd(period, m);
    unsigned __int128 l = static_cast<unsigned __int128>(period / g) * m;
    if (l > kMaxCellPeriod) {
      overflow = true;
      return;
    }
    period = static_cast<std::uint64_t>(l);
  }

  void visit(const SetExpr& s) {
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Finite>) {
            if (!v.elems.empty()) threshold = std::max(threshold, v.elems.back() + 1);
          } else if constexpr (std::is_same_v<T, Range>) {
            threshold = std::max(threshold, v.hi + 1);
          } else if constexpr (std::is_same_v<T, ArithProg>) {
            threshold = std::max(threshold, v.a);
            need_period(v.d);
          } else if constexpr (std::is_same_v<T, Nu2Level>) {
            if (v.k + 1 > 18) overflow = true;
            else need_period(std::uint64_t{1} << (v.k + 1));
          } else if constexpr (std::is_same_v<T, Sparse>) {
          } else if constexpr (std::is_same_v<T, Complement>) {
            visit(*v.arg);
          } else {
            for (const auto& a : v.args) visit(a);
          }
        },
        s.node());
  }
};

using Bits = std::vector<std::uint8_t>;  // index kind * P + r

Bits eval_cells(const SetExpr& s, std::uint64_t P) {
  const std::size_t size = static_cast<std::size_t>(kCellKinds * P);
  auto kind_of = [P](std::size_t i) { return static_cast<CellKind>(i / P); };
  return std::visit(
      [&](const auto& v) -> Bits {
        using T = std::decay_t<decltype(v)>;
        Bits out(size, 0);
        if constexpr (std::is_same_v<T, Finite> || std::is_same_v<T, Range>) {
          return out;
        } else if constexpr (std::is_same_v<T, ArithProg>) {
          for (std::size_t i = 0; i < size; ++i) out[i] = ((i % P) % v.d) == (v.a % v.d);
        } else if constexpr (std::is_same_v<T, Nu2Level>) {
          std::uint64_t mod = std::uint64_t{1} << (v.k + 1), want = std::uint64_t{1} << v.k;
          for (std::size_t i = 0; i < size; ++i) out[i] = ((i % P) % mod) == want;
        } else if constexpr (std::is_same_v<T, Sparse>) {
          for (std::size_t i = 0; i < size; ++i) {
            CellKind k = kind_of(i);
            switch (v.rule) {
              case SparseRule::Squares:
                out[i] = k == CellKind::SquareOnly || k == CellKind::PowerOfFour;
                break;
              case SparseRule::PowersOfTwo:
                out[i] = k == CellKind::OddPowerOfTwo || k == CellKind::PowerOfFour;
                break;
              case SparseRule::Factorials:
                out[i] = k == CellKind::Factorial;
                break;
            }
          }
        } else if constexpr (std::is_same_v<T, Complement>) {
          out = eval_cells(*v.arg, P);
          for (auto& b : out) b = !b;
        } else if constexpr (std::is_same_v<T, Union>) {
          for (const auto& a : v.args) {
            Bits sub = eval_cells(a, P);
            for (std::size_t i = 0; i < size; ++i) out[i] |= sub[i];
          }
        } else {
          std::fill(out.begin(), out.end(), 1);
          for (const auto& a : v.args) {
            Bits sub = eval_cells(a, P);
            for (std::size_t i = 0; i < size; ++i) out[i] &= sub[i];
          }
        }
        return out;
      },
      s.node());
}

// Residues visited infinitely often by start, start*mult, start*mult^2, ... (mod P).
std::vector<std::uint8_t> cycle_residues(std::uint64_t start, std::uint64_t mult, std::uint64_t P) {
  std::vector<std::int64_t> seen(P, -1);
  std::vector<std::uint64_t> order;
  std::uint64_t x = start % P;
  while (seen[x] < 0) {
    seen[x] = static_cast<std::int64_t>(order.size());
    order.push_back(x);
    x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * mult % P);
  }
  std::vector<std::uint8_t> out(P, 0);
  for (std::size_t i = static_cast<std::size_t>(seen[x]); i < order.size(); ++i) out[order[i]] = 1;
  return out;
}

}  // namespace

std::optional<CellStructure> analyze_cells(const SetExpr& s, std::uint64_t extra_modulus) {
  StructureScan scan;
  scan.need_period(std::max<std::uint64_t>(extra_modulus, 1));
  scan.visit(s);
  if (scan.overflow) return std::nullopt;
  const std::uint64_t P = scan.period;

  CellStructure cs;
  cs.threshold = scan.threshold;
  cs.period = P;
  Bits bits = eval_cells(s, P);
  for (int k = 0; k < kCellKinds; ++k)
    cs.member[k].assign(bits.begin() + k * P, bits.begin() + (k + 1) * P);

  cs.infinite[0].assign(P, 1);
  cs.infinite[1].assign(P, 0);
  for (std::uint64_t m = 0; m < P; ++m)
    cs.infinite[1][static_cast<std::uint64_t>(static_cast<unsigned __int128>(m) * m % P)] = 1;
  cs.infinite[2] = cycle_residues(8, 4, P);
  cs.infinite[3] = cycle_residues(4, 4, P);
  cs.infinite[4].assign(P, 0);
  cs.infinite[4][0] = 1;
  return cs;
}

bool CellStructure::is_finite() const {
  for (int k = 0; k < kCellKinds; ++k)
    for (std::uint64_t r = 0; r < period; ++r)
      if (member[k][r] && infinite[k][r]) return false;
  return true;
}

bool CellStructure::is_cofinite() const {
  for (int k = 0; k < kCellKinds; ++k)
    for (std::uint64_t r = 0; r < period; ++r)
      if (!member[k][r] && infinite[k][r]) return false;
  return true;
}

Rational CellStructure::density() const {
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < period; ++r) hits += member[0][r];
  Rational d(from_u64(hits) / from_u64(period));
  d.canonicalize();
  return d;
}

std::vector<std::uint64_t> CellStructure::plain_residues() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < period; ++r)
    if (member[0][r]) out.push_back(r);
  return out;
}

std::vector<CellKind> CellStructure::sparse_kinds() const {
  std::vector<CellKind> out;
  for (int k = 1; k < kCellKinds; ++k)
    for (std::uint64_t r = 0; r < period; ++r)
      if (member[k][r] && infinite[k][r]) {
        out.push_back(static_cast<CellKind>(k));
        break;
      }
  return out;
}

}  // namespace omega
