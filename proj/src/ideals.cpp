#include "omega/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omega/error.hpp"

namespace omega {

using namespace ideal_node;

// ---------------------------------------------------------------------------
// Parameter families

std::string to_string(WeightSpec::Rule rule) {
  switch (rule) {
    case WeightSpec::Rule::Harmonic: return "harmonic";
    case WeightSpec::Rule::Constant: return "constant";
    case WeightSpec::Rule::Alternating: return "alternating";
    case WeightSpec::Rule::ZeroAfter: return "zeroAfter";
  }
  return "?";
}

Rational WeightSpec::value(std::uint64_t n) const {
  if (n < table.size()) return table[n];
  switch (tail) {
    case Rule::Harmonic: return Rational(1) / from_u64(n + 1);
    case Rule::Constant: return c;
    case Rule::Alternating:
      return n % 2 == 0 ? c : Rational(2) / from_u64(n + 3);
    case Rule::ZeroAfter: return Rational(0);
  }
  return Rational(0);
}

bool WeightSpec::divergent_sum() const {
  switch (tail) {
    case Rule::Harmonic: return true;
    case Rule::Constant: return c > 0;
    case Rule::Alternating: return true;  // odd terms 2/(n+3) already diverge
    case Rule::ZeroAfter: return false;
  }
  return false;
}

Rational WeightSpec::limsup() const {
  switch (tail) {
    case Rule::Constant:
    case Rule::Alternating: return c;
    default: return Rational(0);
  }
}

std::string to_string(BlockSpec::Rule rule) {
  return rule == BlockSpec::Rule::Constant ? "constant" : "linear";
}

std::uint64_t BlockSpec::length(std::uint64_t n) const {
  if (n < table.size()) return table[n];
  return tail == Rule::Constant ? L : n + 1;
}

std::uint64_t BlockSpec::start(std::uint64_t n) const {
  unsigned __int128 s = 0;
  const std::uint64_t T = table.size();
  for (std::uint64_t i = 0; i < std::min(n, T); ++i) s += table[i];
  if (n > T) {
    if (tail == Rule::Constant) {
      s += static_cast<unsigned __int128>(n - T) * L;
    } else {
      unsigned __int128 a = static_cast<unsigned __int128>(n) * (n + 1);
      unsigned __int128 b = static_cast<unsigned __int128>(T) * (T + 1);
      s += (a - b) / 2;
    }
  }
  constexpr auto kMax = static_cast<unsigned __int128>(~std::uint64_t{0});
  return static_cast<std::uint64_t>(std::min(s, kMax));
}

std::uint64_t BlockSpec::block_of(std::uint64_t k) const {
  // Largest n with start(n) <= k; lengths are >= 1 so n <= k.
  std::uint64_t lo = 0, hi = k;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (start(mid) <= k) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

void BlockSpec::validate() const {
  for (auto len : table)
    if (len == 0) fail(ErrorKind::InvalidSpec, "block lengths must be >= 1");
  if (tail == Rule::Constant && L == 0) fail(ErrorKind::InvalidSpec, "block length L must be >= 1");
}

std::string to_string(BlockSubmeasureSpec::Kind kind) {
  switch (kind) {
    case BlockSubmeasureSpec::Kind::NormalizedCounting: return "normalizedCounting";
    case BlockSubmeasureSpec::Kind::WeightedSum: return "weightedSum";
    case BlockSubmeasureSpec::Kind::WeightedMax: return "weightedMax";
  }
  return "?";
}

Rational BlockSubmeasureSpec::weight_in_block(std::uint64_t n) const {
  if (kind == Kind::NormalizedCounting || weight == Weight::InverseLength)
    return Rational(1) / from_u64(blocks.length(n));
  return c;
}

Rational BlockSubmeasureSpec::evaluate(std::uint64_t n,
                                       std::span<const std::uint64_t> elems_in_block) const {
  if (elems_in_block.empty()) return Rational(0);
  Rational w = weight_in_block(n);
  if (kind == Kind::WeightedMax) return w;
  return w * from_u64(elems_in_block.size());
}

Rational BlockSubmeasureSpec::singleton_limsup() const {
  if (kind == Kind::NormalizedCounting || weight == Weight::InverseLength)
    return blocks.lengths_unbounded() ? Rational(0) : Rational(1) / from_u64(blocks.L);
  return c;
}

void BlockSubmeasureSpec::validate() const {
  blocks.validate();
  if (kind != Kind::NormalizedCounting && weight == Weight::Constant && c <= 0)
    fail(ErrorKind::InvalidSpec, "constant submeasure weight must be positive");
  if (kind == Kind::WeightedMax && weight == Weight::InverseLength && blocks.lengths_unbounded())
    fail(ErrorKind::InvalidSpec,
         "weightedMax with inverse-length weights on unbounded blocks gives phi_n(omega) -> 0; "
         "the ideal would not be proper");
}

// ---------------------------------------------------------------------------
// IdealSpec

IdealSpec IdealSpec::restriction(IdealSpec base, SetExpr e) {
  return IdealSpec(Restriction{std::make_shared<const IdealSpec>(std::move(base)), std::move(e)});
}

std::string IdealSpec::name() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fin>) return "fin";
        else if constexpr (std::is_same_v<T, DensityZero>) return "densityZero";
        else if constexpr (std::is_same_v<T, Matrix>) return "matrix(" + to_string(v.a.kind()) + ")";
        else if constexpr (std::is_same_v<T, Summable>) return "summable(" + to_string(v.f.tail) + ")";
        else if constexpr (std::is_same_v<T, GenDensity>) return "genDensity(" + to_string(v.phi.kind) + ")";
        else if constexpr (std::is_same_v<T, Lacunary>) return "lacunary(" + to_string(v.theta.tail) + ")";
        else if constexpr (std::is_same_v<T, FubiniEmptyFin>) return "fubiniEmptyFin";
        else return "restriction(" + v.base->name() + ")";
      },
      node_);
}

void IdealSpec::validate() const {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Matrix>) {
          if (v.a.kind() == MatrixSpec::Kind::ExplicitRows &&
              v.a.tail() == MatrixSpec::Tail::RepeatLast)
            fail(ErrorKind::InvalidSpec,
                 "matrix ideal requires a regular matrix; repeatLast rows have nonvanishing "
                 "column limits or vanishing row sums");
        } else if constexpr (std::is_same_v<T, Summable>) {
          for (const auto& x : v.f.table)
            if (x < 0) fail(ErrorKind::InvalidSpec, "weights must be nonnegative");
          if (v.f.c < 0) fail(ErrorKind::InvalidSpec, "weights must be nonnegative");
          if (!v.f.divergent_sum())
            fail(ErrorKind::InvalidSpec, "summable ideal requires a divergent weight sum");
        } else if constexpr (std::is_same_v<T, GenDensity>) {
          v.phi.validate();
        } else if constexpr (std::is_same_v<T, Lacunary>) {
          v.theta.validate();
        } else if constexpr (std::is_same_v<T, Restriction>) {
          v.base->validate();
          if (member(*v.base, v.e).verdict == Verdict::In)
            fail(ErrorKind::InvalidSpec, "restriction set must not belong to the base ideal");
        }
      },
      node_);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::In: return "In";
    case Verdict::Out: return "Out";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Tallness t) {
  switch (t) {
    case Tallness::Tall: return "Tall";
    case Tallness::NotTall: return "NotTall";
    case Tallness::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Cell judgements

namespace {

enum class Style { FinLike, ZeroDensity, Alternating, Fubini };

struct Judge {
  Style style = Style::FinLike;
  std::string family;  // certificate prefix flavour
  std::uint64_t modulus = 1;
  Rational c;  // alternating weight on evens

  bool in_ideal(CellKind kind, std::uint64_t r) const {
    switch (style) {
      case Style::FinLike: return false;
      case Style::ZeroDensity: return kind != CellKind::Plain;
      case Style::Alternating:
        if (r % 2 == 0) return c == 0;
        return kind != CellKind::Plain;
      case Style::Fubini:
        return kind == CellKind::OddPowerOfTwo || kind == CellKind::PowerOfFour ||
               kind == CellKind::Factorial;
    }
    return false;
  }
};

Judge judge_for(const IdealSpec& ideal) {
  Judge j;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fin>) {
          j = Judge{Style::FinLike, "fin", 1, Rational(0)};
        } else if constexpr (std::is_same_v<T, DensityZero>) {
          j = Judge{Style::ZeroDensity, "density", 1, Rational(0)};
        } else if constexpr (std::is_same_v<T, Matrix>) {
          if (v.a.cesaro_type()) j = Judge{Style::ZeroDensity, "cesaro", 1, Rational(0)};
          else j = Judge{Style::FinLike, "matrix-identity", 1, Rational(0)};
        } else if constexpr (std::is_same_v<T, Summable>) {
          switch (v.f.tail) {
            case WeightSpec::Rule::Harmonic: j = Judge{Style::ZeroDensity, "summable", 1, Rational(0)}; break;
            case WeightSpec::Rule::Alternating:
              j = Judge{Style::Alternating, "summable", 2, v.f.c};
              break;
            default: j = Judge{Style::FinLike, "summable-constant", 1, Rational(0)}; break;
          }
        } else if constexpr (std::is_same_v<T, GenDensity>) {
          if (v.phi.singleton_limsup() == 0) j = Judge{Style::ZeroDensity, "block", 1, Rational(0)};
          else j = Judge{Style::FinLike, "block-bounded", 1, Rational(0)};
        } else if constexpr (std::is_same_v<T, Lacunary>) {
          if (v.theta.lengths_unbounded()) j = Judge{Style::ZeroDensity, "block", 1, Rational(0)};
          else j = Judge{Style::FinLike, "block-bounded", 1, Rational(0)};
        } else if constexpr (std::is_same_v<T, FubiniEmptyFin>) {
          j = Judge{Style::Fubini, "fubini", 1, Rational(0)};
        }
      },
      ideal.node());
  return j;
}

std::string growth_of(CellKind k) {
  switch (k) {
    case CellKind::SquareOnly: return "squares: counting function O(√N)";
    case CellKind::OddPowerOfTwo:
    case CellKind::PowerOfFour: return "powers of two: counting function O(log N)";
    case CellKind::Factorial: return "factorials: inverse-factorial counting";
    default: return "";
  }
}

std::string join_kinds(const std::vector<CellKind>& kinds) {
  // Powers of four are squares; their cells add nothing next to square cells.
  const bool squares = std::find(kinds.begin(), kinds.end(), CellKind::SquareOnly) != kinds.end();
  std::vector<std::string> parts;
  for (auto k : kinds) {
    if (squares && k == CellKind::PowerOfFour) continue;
    auto g = growth_of(k);
    if (std::find(parts.begin(), parts.end(), g) == parts.end()) parts.push_back(g);
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out;
}

std::string in_certificate(const Judge& j, const CellStructure& cs) {
  auto kinds = cs.sparse_kinds();
  std::string sparse = join_kinds(kinds);
  bool zero_weight_evens = j.style == Style::Alternating && j.c == 0 && !cs.plain_residues().empty();
  switch (j.style) {
    case Style::ZeroDensity:
    case Style::Alternating:
      if (j.family == "summable") {
        std::string out = "convergent-sum: eventually inside sparse sets whose weight sums converge";
        if (!sparse.empty()) out += " (" + sparse + ")";
        if (zero_weight_evens) out += "; zero weight on even elements";
        return out;
      }
      if (j.family == "block")
        return "block-sparse: sparse sets meet each block I_n in o(|I_n|) points (" + sparse + ")";
      return "sparse-counting: eventually inside sparse sets, " + sparse;
    case Style::Fubini:
      return "level-slice: eventually inside powers of two and factorials; every nu2 level slice "
             "is finite";
    case Style::FinLike:
      break;
  }
  return "finite-set: finite set";
}

std::string out_certificate(const Judge& j, const CellStructure& cs, const SetExpr& s,
                            CellKind kind, std::uint64_t r) {
  std::ostringstream os;
  const std::uint64_t P = cs.period;
  switch (j.style) {
    case Style::FinLike:
      os << "infinite-set: set is infinite and the " << j.family
         << " ideal contains only finite sets";
      return os.str();
    case Style::Fubini: {
      if (kind == CellKind::SquareOnly) {
        os << "level-slice: squares congruent to " << r << " mod " << P
           << " have an infinite level slice";
        return os.str();
      }
      std::uint32_t a = nu2(P);
      std::uint32_t level = (r % (std::uint64_t{1} << a)) != 0 ? nu2(r) : a;
      os << "level-slice: level slice infinite (nu2 level " << level << ")";
      return os.str();
    }
    case Style::Alternating:
      if (r % 2 == 0) {
        os << "divergent-sum: weight " << to_string(j.c)
           << " on infinitely many even elements";
        return os.str();
      }
      [[fallthrough]];
    case Style::ZeroDensity:
      break;
  }
  if (j.family == "summable") {
    os << "divergent-sum: sum of f over the residue class " << r << " mod " << P
       << " diverges (harmonic comparison)";
    return os.str();
  }
  Rational d = cs.density();
  if (auto ap = s.as<set_node::ArithProg>()) {
    os << "ap-density: AP density 1/d = 1/" << ap->d << " > 0";
  } else if (j.family == "block") {
    os << "block-density: block measures tend to density " << to_string(d) << " > 0";
  } else {
    os << "periodic-density: density " << to_string(d) << " > 0 (residues mod " << P << ")";
  }
  return os.str();
}

// Indicator of s over [0, N].
std::vector<std::uint8_t> indicator_bits(const SetExpr& s, std::uint64_t N) {
  std::vector<std::uint8_t> bits(N + 1, 0);
  if (s.as<set_node::Finite>() || s.as<set_node::Sparse>() || s.as<set_node::ArithProg>() ||
      s.as<set_node::Range>()) {
    for (auto e : enumerate_prefix(s, N)) bits[e] = 1;
    return bits;
  }
  for (std::uint64_t n = 0; n <= N; ++n) bits[n] = indicator(s, n);
  return bits;
}

}  // namespace

// ---------------------------------------------------------------------------
// Traces

ExactTrace density_trace(const IdealSpec& ideal, const SetExpr& s, std::uint64_t rows) {
  if (rows < 1) fail(ErrorKind::InvalidSpec, "rows must be >= 1");
  ideal.validate();
  ExactTrace out;
  out.reserve(rows);
  const std::uint64_t last = rows - 1;

  if (ideal.as<DensityZero>()) {
    auto bits = indicator_bits(s, last);
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n <= last; ++n) {
      count += bits[n];
      out.emplace_back(n, Rational(from_u64(count) / from_u64(n + 1)));
    }
  } else if (auto m = ideal.as<Matrix>()) {
    std::uint64_t max_bound = 0;
    for (std::uint64_t n = 0; n <= last; ++n) max_bound = std::max(max_bound, m->a.row_support_bound(n));
    auto bits = indicator_bits(s, max_bound);
    for (std::uint64_t n = 0; n <= last; ++n) {
      Rational sum = 0;
      auto row = m->a.row(n);
      for (std::uint64_t k = 0; k < row.size(); ++k)
        if (bits[k]) sum += row[k];
      sum.canonicalize();
      out.emplace_back(n, sum);
    }
  } else if (auto sm = ideal.as<Summable>()) {
    auto bits = indicator_bits(s, last);
    Rational sum = 0;
    for (std::uint64_t n = 0; n <= last; ++n) {
      if (bits[n]) sum += sm->f.value(n);
      sum.canonicalize();
      out.emplace_back(n, sum);
    }
  } else if (auto lac = ideal.as<Lacunary>()) {
    // Counts by prefix differences.
    const std::uint64_t end = lac->theta.start(rows);
    auto bits = indicator_bits(s, end);
    std::vector<std::uint64_t> prefix(end + 2, 0);
    for (std::uint64_t k = 0; k <= end; ++k) prefix[k + 1] = prefix[k] + bits[k];
    for (std::uint64_t n = 0; n <= last; ++n) {
      std::uint64_t a = lac->theta.start(n), b = lac->theta.start(n + 1);
      Rational v(from_u64(prefix[b] - prefix[a]) / from_u64(b - a));
      v.canonicalize();
      out.emplace_back(n, v);
    }
  } else if (auto gd = ideal.as<GenDensity>()) {
    // Submeasure evaluated from the block's element list.
    for (std::uint64_t n = 0; n <= last; ++n) {
      std::uint64_t a = gd->phi.blocks.start(n), len = gd->phi.blocks.length(n);
      std::vector<std::uint64_t> elems;
      for (std::uint64_t k = a; k < a + len; ++k)
        if (indicator(s, k)) elems.push_back(k);
      Rational v = gd->phi.evaluate(n, elems);
      v.canonicalize();
      out.emplace_back(n, v);
    }
  } else {
    fail(ErrorKind::UnsupportedFamily, "density_trace is not defined for " + ideal.name());
  }
  return out;
}

Trace horizon_trace(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params) {
  params.validate();
  if (auto r = ideal.as<Restriction>())
    return horizon_trace(*r->base, SetExpr::intersect({s, r->e}), params);

  const std::uint64_t N = params.N;
  auto bits = indicator_bits(s, N - 1);
  std::vector<std::uint64_t> prefix(N + 1, 0);
  for (std::uint64_t k = 0; k < N; ++k) prefix[k + 1] = prefix[k] + bits[k];
  auto count_upto = [&](std::uint64_t n) { return prefix[n + 1]; };
  auto count_after = [&](std::uint64_t n) { return prefix[N] - prefix[n + 1]; };

  std::vector<double> suffix;  // summable tail sums
  std::vector<std::vector<std::uint64_t>> level_suffix;
  if (auto sm = ideal.as<Summable>()) {
    suffix.assign(N + 1, 0.0);
    for (std::uint64_t k = N; k-- > 0;)
      suffix[k] = suffix[k + 1] + (bits[k] ? to_double(sm->f.value(k)) : 0.0);
  }
  if (ideal.as<FubiniEmptyFin>()) {
    std::uint32_t levels = 64 - __builtin_clzll(N) + 1;
    level_suffix.assign(levels, std::vector<std::uint64_t>(N + 1, 0));
    for (std::uint64_t k = N; k-- > 0;) {
      for (std::uint32_t l = 0; l < levels; ++l) level_suffix[l][k] = level_suffix[l][k + 1];
      if (bits[k]) ++level_suffix[nu2(k)][k];
    }
  }

  Trace out;
  out.reserve(params.rows);
  for (std::uint64_t i = 0; i < params.rows; ++i) {
    const std::uint64_t n = params.sample_point(i);
    double v = 0;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Fin>) {
            v = static_cast<double>(count_after(n));
          } else if constexpr (std::is_same_v<T, DensityZero>) {
            v = static_cast<double>(count_upto(n)) / static_cast<double>(n + 1);
          } else if constexpr (std::is_same_v<T, Matrix>) {
            if (node.a.kind() == MatrixSpec::Kind::Identity) {
              v = bits[n];
            } else if (node.a.cesaro_type() && n >= node.a.tail_start()) {
              v = static_cast<double>(count_upto(n)) / static_cast<double>(n + 1);
            } else {
              auto row = node.a.row(n);
              for (std::uint64_t k = 0; k < row.size() && k < N; ++k)
                if (bits[k]) v += to_double(row[k]);
            }
          } else if constexpr (std::is_same_v<T, Summable>) {
            v = suffix[n + 1];
          } else if constexpr (std::is_same_v<T, GenDensity> || std::is_same_v<T, Lacunary>) {
            const BlockSpec& blocks = [&]() -> const BlockSpec& {
              if constexpr (std::is_same_v<T, GenDensity>) return node.phi.blocks;
              else return node.theta;
            }();
            std::uint64_t b = blocks.block_of(n);
            std::uint64_t a = blocks.start(b), len = blocks.length(b);
            std::uint64_t hi = std::min<std::uint64_t>(a + len, N);
            std::uint64_t cnt = prefix[hi] - prefix[a];
            if constexpr (std::is_same_v<T, GenDensity>) {
              std::vector<std::uint64_t> elems(cnt, 0);
              v = to_double(node.phi.evaluate(b, elems));
            } else {
              v = static_cast<double>(cnt) / static_cast<double>(len);
            }
          } else if constexpr (std::is_same_v<T, FubiniEmptyFin>) {
            std::uint64_t best = 0;
            for (const auto& lv : level_suffix) best = std::max(best, lv[n + 1]);
            v = static_cast<double>(best);
          }
        },
        ideal.node());
    out.emplace_back(n, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership

TriState member(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params) {
  ideal.validate();
  if (auto r = ideal.as<Restriction>()) {
    TriState inner = member(*r->base, SetExpr::intersect({s, r->e}), params);
    if (inner.verdict != Verdict::Unknown) inner.certificate = "restriction: " + inner.certificate;
    return inner;
  }
  Judge judge = judge_for(ideal);
  auto cells = analyze_cells(s, judge.modulus);
  TriState out;
  if (!cells) {
    out.verdict = Verdict::Unknown;
    out.trace = horizon_trace(ideal, s, params);
    return out;
  }
  if (cells->is_finite()) {
    out.verdict = Verdict::In;
    out.certificate = "finite-set: finite set";
    return out;
  }
  if (cells->is_cofinite()) {
    out.verdict = Verdict::Out;
    out.certificate = "cofinite-set: complement is finite and the ideal is proper";
    return out;
  }
  for (int k = 0; k < kCellKinds; ++k) {
    for (std::uint64_t r = 0; r < cells->period; ++r) {
      if (!cells->member[k][r] || !cells->infinite[k][r]) continue;
      auto kind = static_cast<CellKind>(k);
      if (!judge.in_ideal(kind, r)) {
        out.verdict = Verdict::Out;
        out.certificate = out_certificate(judge, *cells, s, kind, r);
        return out;
      }
    }
  }
  out.verdict = Verdict::In;
  out.certificate = in_certificate(judge, *cells);
  return out;
}

TriState dual_member(const IdealSpec& ideal, const SetExpr& s, const HorizonParams& params) {
  return member(ideal, SetExpr::complement(s), params);
}

// ---------------------------------------------------------------------------
// Tallness

std::optional<Rational> recurring_level(std::span<const Rational> samples,
                                        const Rational& recurrence) {
  if (samples.empty()) return std::nullopt;
  std::vector<Rational> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return a > b; });
  Rational need = recurrence * from_u64(sorted.size());
  BigInt idx = ceil(need);
  if (idx < 1) idx = 1;
  std::size_t i = std::min<std::size_t>(idx.get_ui(), sorted.size()) - 1;
  if (sorted[i] <= 0) return std::nullopt;
  return sorted[i];
}

namespace {

Trace sampled(const HorizonParams& params, const auto& fn) {
  Trace t;
  for (std::uint64_t i = 0; i < params.rows; ++i) {
    std::uint64_t n = params.sample_point(i);
    t.emplace_back(n, fn(n));
  }
  return t;
}

// Finite elements and an arithmetic progression, merged when the finite part
// is the backward continuation of the progression.
SetExpr finite_plus_ap(std::vector<std::uint64_t> finite, std::uint64_t a, std::uint64_t d) {
  std::sort(finite.begin(), finite.end());
  while (a >= d && !finite.empty() && finite.back() == a - d) {
    finite.pop_back();
    a -= d;
  }
  SetExpr ap = SetExpr::arith_prog(a, d);
  if (finite.empty()) return ap;
  return SetExpr::set_union({SetExpr::finite(std::move(finite)), ap});
}

SetExpr summable_witness(const WeightSpec& f) {
  const Rational half = f.limsup() / 2;
  const std::uint64_t T = f.table.size();
  std::vector<std::uint64_t> picked, dropped;
  for (std::uint64_t n = 0; n < T; ++n) (f.table[n] > half ? picked : dropped).push_back(n);
  if (f.tail == WeightSpec::Rule::Constant) {
    // {n : f(n) > c/2} = omega minus the small table entries.
    return SetExpr::complement(SetExpr::finite(std::move(dropped)));
  }
  // Alternating: evens from T on, plus odd tail entries 2/(n+3) > c/2.
  std::uint64_t first_even = T + (T % 2);
  for (std::uint64_t n = T | 1; Rational(2) / from_u64(n + 3) > half; n += 2) picked.push_back(n);
  return finite_plus_ap(std::move(picked), first_even, 2);
}

SetExpr block_starts_witness(const BlockSpec& b) {
  std::vector<std::uint64_t> starts;
  for (std::uint64_t n = 0; n < b.table.size(); ++n) starts.push_back(b.start(n));
  return finite_plus_ap(std::move(starts), b.start(b.table.size()), b.L);
}

}  // namespace

TallnessReport is_tall(const IdealSpec& ideal, const HorizonParams& params) {
  ideal.validate();
  params.validate();
  TallnessReport rep;
  auto tall = [&rep](std::string criterion) {
    rep.verdict = Tallness::Tall;
    rep.criterion = std::move(criterion);
  };
  auto not_tall = [&rep](std::string criterion, SetExpr witness, Rational delta) {
    rep.verdict = Tallness::NotTall;
    rep.criterion = std::move(criterion);
    rep.witness = std::move(witness);
    rep.delta = std::move(delta);
  };
  auto inverse = [](std::uint64_t n) { return 1.0 / static_cast<double>(n + 1); };

  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Fin>) {
          not_tall("fin: no infinite set belongs to Fin", SetExpr::omega(), Rational(1));
        } else if constexpr (std::is_same_v<T, DensityZero>) {
          tall("density-zero: Cesaro max entry 1/(n+1) -> 0");
          rep.trace = sampled(params, inverse);
        } else if constexpr (std::is_same_v<T, Matrix>) {
          if (v.a.cesaro_type()) {
            tall("matrix-max-entry: max_k a_{n,k} = 1/(n+1) -> 0 (closed form)");
            rep.trace = sampled(params, inverse);
          } else {
            // Identity: tau_n = a_{n,n} = 1 on every row, fresh column each row.
            std::vector<Rational> taus;
            for (std::uint64_t i = 0; i < params.rows; ++i) taus.push_back(v.a.entry(i, i));
            auto level = recurring_level(taus, params.recurrence);
            rep.trace = sampled(params, [](std::uint64_t) { return 1.0; });
            not_tall("matrix-max-entry: a_{n,n} = 1 recurs on every row with distinct columns",
                     SetExpr::omega(), level.value_or(Rational(1)));
          }
        } else if constexpr (std::is_same_v<T, Summable>) {
          const auto& f = v.f;
          rep.trace = sampled(params, [&f](std::uint64_t n) { return to_double(f.value(n)); });
          if (f.limsup() == 0) {
            tall("summable: f(n) -> 0 (" + to_string(f.tail) + " tail)");
          } else {
            not_tall("summable: limsup f = " + to_string(f.limsup()) + " > 0",
                     summable_witness(f), f.limsup());
          }
        } else if constexpr (std::is_same_v<T, GenDensity> || std::is_same_v<T, Lacunary>) {
          BlockSubmeasureSpec phi;
          if constexpr (std::is_same_v<T, GenDensity>) phi = v.phi;
          else phi.blocks = v.theta;
          rep.trace = sampled(params, [&phi](std::uint64_t n) {
            return to_double(phi.singleton(phi.blocks.block_of(n)));
          });
          Rational limsup = phi.singleton_limsup();
          if (limsup == 0) {
            tall("block-singleton: max_k phi_n({k}) = 1/|I_n| -> 0 since |I_n| = n+1");
          } else if (!phi.blocks.lengths_unbounded()) {
            not_tall("block-singleton: limsup max_k phi_n({k}) = " + to_string(limsup) + " > 0",
                     block_starts_witness(phi.blocks), limsup);
          } else {
            not_tall("block-singleton: every singleton weighs " + to_string(limsup) +
                         "; infinite sets meet infinitely many blocks",
                     SetExpr::omega(), limsup);
          }
        } else if constexpr (std::is_same_v<T, FubiniEmptyFin>) {
          not_tall("fubini: every infinite set of odd numbers has an infinite level-0 slice",
                   SetExpr::nu2_level(0), Rational(1));
        } else {
          TallnessReport base = is_tall(*v.base, params);
          if (base.verdict == Tallness::Tall) {
            tall("restriction: inherited from tall base (" + base.criterion + ")");
            rep.trace = base.trace;
          } else {
            rep.verdict = Tallness::Unknown;
            rep.criterion = "restriction: tallness only inherited from a tall base";
            rep.trace = base.trace;
          }
        }
      },
      ideal.node());
  return rep;
}

SetExpr nontall_witness(const IdealSpec& ideal, const HorizonParams& params) {
  auto rep = is_tall(ideal, params);
  if (rep.verdict != Tallness::NotTall)
    fail(ErrorKind::NotApplicable, "ideal " + ideal.name() + " is " + to_string(rep.verdict));
  return *rep.witness;
}

// ---------------------------------------------------------------------------
// Tall subsets

TallSubset select_tall_subset(const IdealSpec& ideal, std::span<const std::uint64_t> candidates,
                              const HorizonParams& params) {
  if (is_tall(ideal, params).verdict != Tallness::Tall)
    fail(ErrorKind::NotApplicable, "ideal " + ideal.name() + " is not certified tall");
  TallSubset out;

  if (auto r = ideal.as<Restriction>()) {
    std::vector<std::uint64_t> inside, outside;
    for (auto k : candidates) (indicator(r->e, k) ? inside : outside).push_back(k);
    TallSubset base = select_tall_subset(*r->base, inside, params);
    out.elems = base.elems;
    out.elems.insert(out.elems.end(), outside.begin(), outside.end());
    std::sort(out.elems.begin(), out.elems.end());
    out.rule = "restriction: base rule on W ∩ E (" + base.rule + "), all of W \\ E";
    out.certificate = "restriction: W ∩ E is selected by the base rule; " + base.certificate;
    return out;
  }

  if (auto sm = ideal.as<Summable>()) {
    for (auto w : candidates) {
      Rational j1 = from_u64(out.elems.size() + 1);
      if (sm->f.value(w) * j1 * j1 <= 1) out.elems.push_back(w);
    }
    out.rule = "inverse-square-greedy: take w when f(w) <= 1/(j+1)^2, j = picks so far";
    out.certificate = "convergent-sum: sum of f over W is at most sum 1/j^2 = pi^2/6";
    return out;
  }

  const BlockSpec* blocks = nullptr;
  if (auto gd = ideal.as<GenDensity>()) blocks = &gd->phi.blocks;
  if (auto lac = ideal.as<Lacunary>()) blocks = &lac->theta;
  if (blocks) {
    std::optional<std::uint64_t> last_block;
    for (auto w : candidates) {
      std::uint64_t b = blocks->block_of(w);
      if (!last_block || b > *last_block) {
        out.elems.push_back(w);
        last_block = b;
      }
    }
    out.rule = "one-per-block: take w when its block holds no earlier pick";
    out.certificate = "block-singleton: phi_n(W) = phi_n({w}) <= 1/|I_n| -> 0";
    return out;
  }

  // Density zero and Cesaro-type matrices.
  for (auto w : candidates) {
    auto j1 = static_cast<unsigned __int128>(out.elems.size() + 1);
    if (4 * j1 * j1 <= static_cast<unsigned __int128>(w) + 1) out.elems.push_back(w);
  }
  out.rule = "sqrt-greedy: take w when 4(j+1)^2 <= w+1, j = picks so far";
  out.certificate = "sqrt-counting: |W ∩ [0,n]| <= sqrt(n+1)/2, density <= 1/(2 sqrt(n+1)) -> 0";
  return out;
}

TallSubset tall_subset_witness(const IdealSpec& ideal, const SetExpr& s,
                               const HorizonParams& params) {
  params.validate();
  if (s.is_finite_variant()) fail(ErrorKind::NotInfinite, "set is a Finite variant");
  if (auto cells = analyze_cells(s)) {
    if (cells->is_finite()) fail(ErrorKind::NotInfinite, "set is finite");
  } else if (count_prefix(s, params.N - 1) <= count_prefix(s, params.N / 2)) {
    fail(ErrorKind::NotInfinite, "set shows no growth over the second half of the horizon");
  }
  auto candidates = enumerate_prefix(s, params.N - 1);
  TallSubset out = select_tall_subset(ideal, candidates, params);
  out.trace = horizon_trace(ideal, SetExpr::finite(out.elems), params);
  if (out.elems.size() < 2)
    fail(ErrorKind::InsufficientHorizon, "fewer than two elements selected below the horizon");
  const double eps = to_double(params.eps);
  for (std::size_t i = (3 * out.trace.size()) / 4; i < out.trace.size(); ++i)
    if (out.trace[i].second >= eps)
      fail(ErrorKind::InsufficientHorizon,
           "selected subset does not decay below eps in the last quarter of the horizon");
  return out;
}

}  // namespace omega
