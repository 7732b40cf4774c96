#include "omega/summability.hpp"

#include <algorithm>
#include <sstream>

#include "omega/error.hpp"
#include "omega/seqspace.hpp"

namespace omega {

TriState check_regularity(const MatrixSpec& a, const HorizonParams& params) {
  params.validate();
  TriState out;
  switch (a.kind()) {
    case MatrixSpec::Kind::Cesaro:
      out.verdict = Verdict::In;
      out.certificate = "closed-form: row sums are exactly 1, column k entries 1/(n+1) -> 0";
      return out;
    case MatrixSpec::Kind::Identity:
      out.verdict = Verdict::In;
      out.certificate = "closed-form: row sums are 1, column k is 1 at n = k and 0 after";
      return out;
    case MatrixSpec::Kind::ExplicitRows:
      break;
  }
  if (a.tail() == MatrixSpec::Tail::CesaroTail) {
    out.verdict = Verdict::In;
    out.certificate = "cesaro-tail: rows n >= " + std::to_string(a.tail_start()) +
                      " are Cesaro rows; finitely many leading rows do not affect the limits";
    return out;
  }
  // Rows repeat forever from the last table row r.
  const auto& r = a.rows().back();
  Rational sum = 0;
  for (const auto& v : r) sum += v;
  std::ostringstream os;
  os << "repeated-row: rows n >= " << a.rows().size() - 1 << " equal the last table row; ";
  if (sum == 0) {
    os << "its row sum is 0, not 1";
  } else {
    std::size_t k = 0;
    while (r[k] == 0) ++k;
    os << "column " << k << " tends to " << to_string(r[k]) << " != 0";
  }
  out.verdict = Verdict::Out;
  out.certificate = os.str();
  return out;
}

std::vector<Rational> transform_prefix(const MatrixSpec& a, const Seq& x, std::uint64_t rows) {
  std::vector<Rational> out;
  out.reserve(rows);
  if (a.kind() == MatrixSpec::Kind::Identity) {
    for (std::uint64_t n = 0; n < rows; ++n) out.push_back(x.eval(n));
    return out;
  }
  // Running prefix sums serve the Cesaro rows.
  Rational prefix = 0;
  std::uint64_t summed = 0;  // prefix = sum_{k < summed} x(k)
  std::vector<Rational> xs;
  auto xk = [&](std::uint64_t k) -> const Rational& {
    while (xs.size() <= k) xs.push_back(x.eval(xs.size()));
    return xs[k];
  };
  for (std::uint64_t n = 0; n < rows; ++n) {
    if (a.cesaro_type() && n >= a.tail_start()) {
      while (summed <= n) prefix += xk(summed++);
      Rational v = prefix / from_u64(n + 1);
      v.canonicalize();
      out.push_back(v);
      continue;
    }
    auto row = a.row(n);
    Rational v = 0;
    for (std::uint64_t k = 0; k < row.size(); ++k)
      if (row[k] != 0) v += row[k] * xk(k);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

TriState pringsheim_zero_estimate(const MatrixSpec& a, const HorizonParams& params) {
  params.validate();
  TriState out;
  auto sample = [&](const auto& tau) {
    for (std::uint64_t i = 0; i < params.rows; ++i) {
      std::uint64_t n0 = params.sample_point(i);
      out.trace.emplace_back(n0, tau(n0));
    }
  };
  if (a.kind() == MatrixSpec::Kind::Identity) {
    std::vector<Rational> taus;
    for (std::uint64_t i = 0; i < params.rows; ++i) {
      std::uint64_t n0 = params.sample_point(i);
      taus.push_back(a.entry(n0, n0));
    }
    auto level = recurring_level(taus, params.recurrence);
    sample([](std::uint64_t) { return 1.0; });
    if (level && *level > params.eps) {
      out.verdict = Verdict::Out;
      out.certificate = "recurring-level: a_{n,n} = 1 beyond every n0, delta=" + to_string(*level);
    }
    return out;
  }
  if (a.kind() == MatrixSpec::Kind::Cesaro) {
    out.verdict = Verdict::In;
    out.certificate = "closed-form: max_{n,k >= n0} a_{n,k} = 1/(n0+1) -> 0";
    sample([](std::uint64_t n0) { return 1.0 / static_cast<double>(n0 + 1); });
    return out;
  }
  const auto& rows = a.rows();
  const std::uint64_t T = rows.size();
  // Largest entry a_{n,k} with n, k >= n0 among the table rows.
  auto table_max = [&](std::uint64_t n0, std::uint64_t last_row) {
    Rational m = 0;
    for (std::uint64_t n = n0; n < last_row; ++n)
      for (std::uint64_t k = n0; k < rows[n].size(); ++k) m = std::max(m, rows[n][k]);
    return m;
  };
  if (a.tail() == MatrixSpec::Tail::CesaroTail) {
    out.verdict = Verdict::In;
    out.certificate = "cesaro-tail: beyond row " + std::to_string(T) +
                      " the max entry is 1/(n0+1) -> 0";
    sample([&](std::uint64_t n0) {
      Rational m = table_max(std::min(n0, T), T);
      m = std::max(m, Rational(Rational(1) / from_u64(std::max(n0, T) + 1)));
      return to_double(m);
    });
    return out;
  }
  // repeatLast: the last row has finitely many entries, so a_{n,k} = 0 once
  // n >= T - 1 and k >= its length.
  const std::uint64_t width = rows.back().size();
  const std::uint64_t n_zero = std::max(T, width);
  out.verdict = Verdict::In;
  out.certificate = "finite-width-tail: a_{n,k} = 0 for all n, k >= " + std::to_string(n_zero);
  sample([&](std::uint64_t n0) {
    if (n0 >= n_zero) return 0.0;
    Rational m = table_max(std::min(n0, T), T);
    for (std::uint64_t k = n0; k < width; ++k) m = std::max(m, rows.back()[k]);
    return to_double(m);
  });
  return out;
}

Seminorms eval_seminorms(const MatrixSpec& a, const Seq& x, std::uint64_t n,
                         const HorizonParams& params) {
  params.validate();
  Seminorms s;
  s.p = abs(x.eval(n));
  const std::uint64_t bound = std::min(a.row_support_bound(n), params.N);
  Rational partial = 0;
  s.q = 0;
  for (std::uint64_t k = 0; k <= bound; ++k) {
    Rational e = a.entry(n, k);
    if (e == 0) continue;
    partial += e * x.eval(k);
    s.q = std::max(s.q, Rational(abs(partial)));
  }
  s.q.canonicalize();
  // Partial sums are constant after the row support.
  s.stabilized = a.row_support_bound(n) <= (3 * params.N) / 4;
  return s;
}

namespace {

// Exact Cesaro limit of a bounded sequence whose pieces each have a density.
std::optional<Rational> cesaro_limit(const Seq& x) {
  if (!sup_abs(x)) return std::nullopt;
  const Accumulation acc = accumulation(x);
  Rational eps = 1;
  for (std::size_t i = 1; i < acc.values.size(); ++i)
    eps = std::min(eps, Rational((acc.values[i] - acc.values[i - 1]) / 4));
  Rational total_density = 0, limit = 0;
  for (const auto& a : acc.values) {
    auto cells = analyze_cells(SetExpr::complement(exceedance_set(x, a, eps)));
    if (!cells) return std::nullopt;
    Rational d = cells->density();
    total_density += d;
    limit += a * d;
  }
  if (total_density != 1) return std::nullopt;
  limit.canonicalize();
  return limit;
}

bool tends_to_plus_infinity(const Seq& x) {
  if (auto n = x.as<seq_node::Named>())
    return n->rule == seq_node::NamedRule::Identity ||
           n->rule == seq_node::NamedRule::PowersOfTwo;
  if (auto s = x.as<seq_node::Scaled>()) return s->factor > 0 && tends_to_plus_infinity(*s->base);
  return false;
}

}  // namespace

TransformMembership cA_membership_estimate(const MatrixSpec& a, const IdealSpec& ideal,
                                           const Seq& x, const HorizonParams& params) {
  ideal.validate();
  params.validate();
  TransformMembership out;
  if (a.kind() == MatrixSpec::Kind::Identity) {
    SpaceReport rep = classify_space(ideal, x, params);
    out.result.verdict = rep.c.verdict;
    out.result.certificate = "identity transform: " + rep.c.certificate;
    if (rep.c.verdict == Verdict::In) out.limit = rep.limit;
    return out;
  }
  if (a.kind() == MatrixSpec::Kind::ExplicitRows && a.tail() == MatrixSpec::Tail::RepeatLast) {
    const std::uint64_t last = a.rows().size() - 1;
    Rational v = transform_prefix(a, x, last + 1).back();
    out.result.verdict = Verdict::In;
    out.result.certificate = "repeated-row: (Ax)(n) = " + to_string(v) + " for all n >= " +
                             std::to_string(last) + "; eventually constant sequences converge";
    out.limit = v;
    return out;
  }
  // Cesaro-type from here on.
  if (auto L = cesaro_limit(x)) {
    out.result.verdict = Verdict::In;
    out.result.certificate = "cesaro-limit: x is bounded and tends to each accumulation value "
                             "along a set with a density; Ax -> " + to_string(*L) +
                             " ordinarily, hence along every ideal containing Fin";
    out.limit = *L;
    return out;
  }
  if (tends_to_plus_infinity(x)) {
    out.result.verdict = Verdict::Out;
    out.result.certificate = "cesaro-divergence: x -> +infinity so Ax -> +infinity; "
                             "{n : |Ax(n)| > M} is cofinite for every M";
    return out;
  }
  // Horizon estimate.
  auto y = transform_prefix(a, x, params.rows);
  const Rational eps = params.eps;
  Rational eta = simplest_between(y.back() - eps / 4, y.back() + eps / 4);
  for (std::uint64_t n = 0; n < y.size(); ++n) out.result.trace.emplace_back(n, to_double(y[n]));
  out.candidate = eta;
  out.result.verdict = Verdict::Unknown;
  return out;
}

}  // namespace omega
