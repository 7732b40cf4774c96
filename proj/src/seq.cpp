#include "omega/seq.hpp"

#include <algorithm>
#include <limits>

#include "omega/error.hpp"

namespace omega {

using namespace seq_node;

namespace {

SeqEntries canonical_entries(SeqEntries entries, bool keep_zeros) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      fail(ErrorKind::InvalidSpec, "duplicate sequence index " + std::to_string(entries[i].first));
  if (!keep_zeros)
    std::erase_if(entries, [](const auto& e) { return e.second == 0; });
  for (auto& e : entries) e.second.canonicalize();
  return entries;
}

const Rational* lookup(const SeqEntries& entries, std::uint64_t n) {
  auto it = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const auto& e, std::uint64_t k) { return e.first < k; });
  return it != entries.end() && it->first == n ? &it->second : nullptr;
}

constexpr std::uint64_t kMaxIndex = std::numeric_limits<std::uint64_t>::max() - 1;

std::uint64_t clamp_index(const BigInt& v) {
  if (v < 0) return 0;
  if (v > BigInt(std::to_string(kMaxIndex))) return kMaxIndex;
  return std::stoull(v.get_str());
}

SetExpr empty_set() { return SetExpr::finite({}); }
bool is_empty(const SetExpr& s) {
  auto f = s.as<set_node::Finite>();
  return f && f->elems.empty();
}
bool is_all(const SetExpr& s) {
  auto c = s.as<set_node::Complement>();
  return c && is_empty(*c->arg);
}

// {n : n < m}
SetExpr below(std::uint64_t m) { return m == 0 ? empty_set() : SetExpr::range(0, m - 1); }
// {n : n >= m}
SetExpr from(std::uint64_t m) { return SetExpr::complement(below(m)); }

SetExpr unite(const SetExpr& a, const SetExpr& b) {
  if (is_empty(a) || is_all(b)) return b;
  if (is_empty(b) || is_all(a)) return a;
  return SetExpr::set_union({a, b});
}

SetExpr meet(const SetExpr& a, const SetExpr& b) {
  if (is_all(a) || is_empty(b)) return b;
  if (is_all(b) || is_empty(a)) return a;
  return SetExpr::intersect({a, b});
}

SetExpr minus(const SetExpr& a, const SetExpr& b) {
  if (is_empty(b)) return a;
  return meet(a, SetExpr::complement(b));
}

// {n : g(n) > t} and {n : g(n) < t} for the named rules.
SetExpr named_above(const Named& x, const Rational& t) {
  switch (x.rule) {
    case NamedRule::Constant: return x.c > t ? SetExpr::omega() : empty_set();
    case NamedRule::Unit:
      if (t < 0) return SetExpr::omega();
      return t < 1 ? SetExpr::finite({x.k}) : empty_set();
    case NamedRule::Identity:
      if (t < 0) return SetExpr::omega();
      return from(clamp_index(floor(t) + 1));
    case NamedRule::PowersOfTwo: {
      if (t < 1) return SetExpr::omega();
      std::uint64_t n = 0;
      while (pow2(static_cast<std::int64_t>(n)) <= t) ++n;
      return from(n);
    }
    case NamedRule::Harmonic:
      if (t <= 0) return SetExpr::omega();
      if (t >= 1) return empty_set();
      return below(clamp_index(ceil(Rational(1) / t) - 1));  // n + 1 < 1/t
  }
  return empty_set();
}

SetExpr named_below(const Named& x, const Rational& t) {
  switch (x.rule) {
    case NamedRule::Constant: return x.c < t ? SetExpr::omega() : empty_set();
    case NamedRule::Unit:
      if (t > 1) return SetExpr::omega();
      return t > 0 ? SetExpr::complement(SetExpr::finite({x.k})) : empty_set();
    case NamedRule::Identity:
      if (t <= 0) return empty_set();
      return below(clamp_index(ceil(t)));
    case NamedRule::PowersOfTwo: {
      std::uint64_t n = 0;
      while (pow2(static_cast<std::int64_t>(n)) < t) ++n;
      return below(n);
    }
    case NamedRule::Harmonic:
      if (t <= 0) return empty_set();
      if (t > 1) return SetExpr::omega();
      return from(clamp_index(floor(Rational(1) / t)));  // n + 1 > 1/t
  }
  return empty_set();
}

SetExpr entries_exceeding(const SeqEntries& entries, const Rational& eta, const Rational& eps) {
  std::vector<std::uint64_t> hit;
  for (const auto& [i, v] : entries)
    if (abs(v - eta) > eps) hit.push_back(i);
  return SetExpr::finite(std::move(hit));
}

SetExpr entry_indices(const SeqEntries& entries) {
  std::vector<std::uint64_t> idx;
  for (const auto& e : entries) idx.push_back(e.first);
  return SetExpr::finite(std::move(idx));
}

void add_value(std::vector<Rational>& values, Rational v) {
  v.canonicalize();
  if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
}

}  // namespace

Seq Seq::finite_support(SeqEntries entries) {
  return Seq(FiniteSupport{canonical_entries(std::move(entries), false)});
}
Seq Seq::constant(Rational c) {
  c.canonicalize();
  return Seq(Named{NamedRule::Constant, c, 0});
}
Seq Seq::unit(std::uint64_t k) { return Seq(Named{NamedRule::Unit, Rational(0), k}); }
Seq Seq::powers_of_two() { return Seq(Named{NamedRule::PowersOfTwo, Rational(0), 0}); }
Seq Seq::identity() { return Seq(Named{NamedRule::Identity, Rational(0), 0}); }
Seq Seq::harmonic() { return Seq(Named{NamedRule::Harmonic, Rational(0), 0}); }
Seq Seq::overlay(Seq base, SeqEntries patch) {
  return Seq(Overlay{std::make_shared<const Seq>(std::move(base)),
                     canonical_entries(std::move(patch), true)});
}
Seq Seq::masked(Seq base, SetExpr set) {
  return Seq(Masked{std::make_shared<const Seq>(std::move(base)), std::move(set)});
}
Seq Seq::scaled(Rational factor, Seq base) {
  factor.canonicalize();
  return Seq(Scaled{factor, std::make_shared<const Seq>(std::move(base))});
}
Seq Seq::indicator_of(SetExpr set) { return masked(constant(Rational(1)), std::move(set)); }

Rational Seq::eval(std::uint64_t n) const {
  return std::visit(
      [n](const auto& v) -> Rational {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          auto p = lookup(v.entries, n);
          return p ? *p : Rational(0);
        } else if constexpr (std::is_same_v<T, Named>) {
          switch (v.rule) {
            case NamedRule::Constant: return v.c;
            case NamedRule::Unit: return Rational(n == v.k ? 1 : 0);
            case NamedRule::PowersOfTwo: return pow2(static_cast<std::int64_t>(n));
            case NamedRule::Identity: return from_u64(n);
            case NamedRule::Harmonic: return Rational(1) / from_u64(n + 1);
          }
          return Rational(0);
        } else if constexpr (std::is_same_v<T, Overlay>) {
          auto p = lookup(v.patch, n);
          return p ? *p : v.base->eval(n);
        } else if constexpr (std::is_same_v<T, Masked>) {
          return indicator(v.set, n) ? v.base->eval(n) : Rational(0);
        } else {
          Rational r = v.factor * v.base->eval(n);
          r.canonicalize();
          return r;
        }
      },
      node());
}

SetExpr exceedance_set(const Seq& x, const Rational& eta, const Rational& eps) {
  if (eps < 0) fail(ErrorKind::InvalidSpec, "tolerance must be nonnegative");
  return std::visit(
      [&](const auto& v) -> SetExpr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          if (abs(eta) > eps) {
            std::vector<std::uint64_t> near;
            for (const auto& [i, val] : v.entries)
              if (abs(val - eta) <= eps) near.push_back(i);
            return SetExpr::complement(SetExpr::finite(std::move(near)));
          }
          return entries_exceeding(v.entries, eta, eps);
        } else if constexpr (std::is_same_v<T, Named>) {
          return unite(named_above(v, eta + eps), named_below(v, eta - eps));
        } else if constexpr (std::is_same_v<T, Overlay>) {
          SetExpr base = exceedance_set(*v.base, eta, eps);
          return unite(minus(base, entry_indices(v.patch)), entries_exceeding(v.patch, eta, eps));
        } else if constexpr (std::is_same_v<T, Masked>) {
          SetExpr on = meet(exceedance_set(*v.base, eta, eps), v.set);
          if (abs(eta) > eps) return unite(on, SetExpr::complement(v.set));
          return on;
        } else {
          if (v.factor == 0) return abs(eta) > eps ? SetExpr::omega() : empty_set();
          Rational f = abs(v.factor);
          return exceedance_set(*v.base, eta / v.factor, eps / f);
        }
      },
      x.node());
}

SetExpr support(const Seq& x) { return exceedance_set(x, Rational(0), Rational(0)); }

Accumulation accumulation(const Seq& x) {
  Accumulation acc;
  std::visit(
      [&acc](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          acc.values = {Rational(0)};
        } else if constexpr (std::is_same_v<T, Named>) {
          switch (v.rule) {
            case NamedRule::Constant: acc.values = {v.c}; break;
            case NamedRule::Unit:
            case NamedRule::Harmonic: acc.values = {Rational(0)}; break;
            default: acc.unbounded = true; break;
          }
        } else if constexpr (std::is_same_v<T, Overlay>) {
          acc = accumulation(*v.base);
        } else if constexpr (std::is_same_v<T, Masked>) {
          auto cells = analyze_cells(v.set);
          if (cells && cells->is_finite()) {
            acc.values = {Rational(0)};
            return;
          }
          acc = accumulation(*v.base);
          if (!cells || !cells->is_cofinite()) add_value(acc.values, Rational(0));
        } else {
          Accumulation base = accumulation(*v.base);
          for (const auto& a : base.values) add_value(acc.values, v.factor * a);
          acc.unbounded = base.unbounded && v.factor != 0;
          if (v.factor == 0) add_value(acc.values, Rational(0));
        }
      },
      x.node());
  std::sort(acc.values.begin(), acc.values.end());
  return acc;
}

std::optional<Rational> sup_abs(const Seq& x) {
  return std::visit(
      [](const auto& v) -> std::optional<Rational> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          Rational m = 0;
          for (const auto& e : v.entries) m = std::max(m, abs(e.second));
          return m;
        } else if constexpr (std::is_same_v<T, Named>) {
          switch (v.rule) {
            case NamedRule::Constant: return abs(v.c);
            case NamedRule::Unit:
            case NamedRule::Harmonic: return Rational(1);
            default: return std::nullopt;
          }
        } else if constexpr (std::is_same_v<T, Overlay>) {
          auto m = sup_abs(*v.base);
          if (!m) return std::nullopt;
          for (const auto& e : v.patch) *m = std::max(*m, abs(e.second));
          return m;
        } else if constexpr (std::is_same_v<T, Masked>) {
          auto cells = analyze_cells(v.set);
          if (cells && cells->is_finite()) {
            Rational m = 0;
            for (auto k : enumerate_prefix(v.set, cells->threshold)) m = std::max(m, abs(v.base->eval(k)));
            return m;
          }
          return sup_abs(*v.base);
        } else {
          if (v.factor == 0) return Rational(0);
          auto m = sup_abs(*v.base);
          if (!m) return std::nullopt;
          Rational r = abs(v.factor) * *m;
          r.canonicalize();
          return r;
        }
      },
      x.node());
}

}  // namespace omega
