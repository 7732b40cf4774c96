#include "omega/duality.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "omega/error.hpp"

namespace omega {

namespace {

constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 40;

const Rational* lookup(const SeqEntries& entries, std::uint64_t n) {
  auto it = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const auto& e, std::uint64_t k) { return e.first < k; });
  return it != entries.end() && it->first == n ? &it->second : nullptr;
}

// Values of y, memoized per coordinate.
class YCache {
 public:
  explicit YCache(const Seq& y) : y_(y) {}
  const Rational& operator()(std::uint64_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, y_.eval(n)).first;
    return it->second;
  }

 private:
  const Seq& y_;
  std::map<std::uint64_t, Rational> cache_;
};

Rational pair_cached(const SeqEntries& x, YCache& y) {
  Rational sum = 0;
  for (const auto& [i, v] : x) sum += v * y(i);
  sum.canonicalize();
  return sum;
}

// Every index j with |x_j . y| >= scale * 2^(number already taken).
Subfamily greedy_hits(const std::vector<SeqEntries>& elems, YCache& y, const Rational& scale,
                      std::uint64_t count) {
  Subfamily out;
  Rational threshold = scale;
  for (std::uint64_t j = 0; j < elems.size() && out.indices.size() < count; ++j) {
    if (abs(pair_cached(elems[j], y)) >= threshold) {
      out.indices.push_back(j);
      out.elements.push_back(elems[j]);
      threshold *= 2;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// B families

BFamily BFamily::diagonal() { return BFamily(); }

BFamily BFamily::positive_witness(SetExpr s) {
  BFamily b;
  b.kind_ = Kind::PositiveWitness;
  b.set_ = std::move(s);
  return b;
}

BFamily BFamily::explicit_list(std::vector<SeqEntries> elements) {
  BFamily b;
  b.kind_ = Kind::Explicit;
  for (auto& e : elements) b.elements_.push_back(Seq::finite_support(std::move(e)).as<seq_node::FiniteSupport>()->entries);
  return b;
}

std::optional<std::uint64_t> BFamily::size() const {
  if (kind_ == Kind::Explicit) return elements_.size();
  return std::nullopt;
}

std::vector<SeqEntries> BFamily::prefix(std::uint64_t count) const {
  std::vector<SeqEntries> out;
  switch (kind_) {
    case Kind::Diagonal:
      for (std::uint64_t n = 0; n < count; ++n)
        out.push_back({{n, pow2(static_cast<std::int64_t>(n))}});
      break;
    case Kind::PositiveWitness: {
      auto s = witness_enumeration(*set_, count);
      SeqEntries acc;
      for (std::uint64_t n = 0; n < count; ++n) {
        acc.emplace_back(s[n], pow2(-static_cast<std::int64_t>(n)));
        out.push_back(acc);
      }
      break;
    }
    case Kind::Explicit:
      out.assign(elements_.begin(),
                 elements_.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(count, elements_.size())));
      break;
  }
  return out;
}

SeqEntries BFamily::element(std::uint64_t n) const {
  switch (kind_) {
    case Kind::Diagonal: return {{n, pow2(static_cast<std::int64_t>(n))}};
    case Kind::PositiveWitness: return prefix(n + 1).back();
    case Kind::Explicit:
      if (n >= elements_.size()) fail(ErrorKind::NotFound, "B has only " + std::to_string(elements_.size()) + " elements");
      return elements_[n];
  }
  return {};
}

Rational pair(const SeqEntries& x, const Seq& y) {
  Rational sum = 0;
  for (const auto& [i, v] : x) sum += v * y.eval(i);
  sum.canonicalize();
  return sum;
}

// ---------------------------------------------------------------------------
// Positive side

std::vector<std::uint64_t> witness_enumeration(const SetExpr& s, std::uint64_t count) {
  if (s.is_finite_variant()) fail(ErrorKind::NotInfinite, "witness set is a Finite variant");
  auto elems = first_elements(s, count, kEnumerationLimit);
  if (elems.size() < count)
    fail(ErrorKind::NotInfinite, "witness set has only " + std::to_string(elems.size()) +
                                     " elements within reach");
  return elems;
}

DualPair positive_witness(const SetExpr& s, std::uint64_t depth) {
  witness_enumeration(s, depth + 1);
  return DualPair{BFamily::positive_witness(s), Seq::powers_of_two()};
}

BoundednessReport verify_boundedness(const DualPair& witness, const Seq& v, const IdealSpec& ideal,
                                     const Rational& M, const SetExpr& a, std::uint64_t depth) {
  if (witness.B.kind() != BFamily::Kind::PositiveWitness)
    fail(ErrorKind::InvalidSpec, "boundedness check needs a positive-witness family");
  if (M < 0) fail(ErrorKind::InvalidSpec, "M must be nonnegative");
  BoundednessReport rep;
  auto s = witness_enumeration(*witness.B.set(), depth + 1);
  for (std::uint64_t n = 0; n <= s.back(); ++n)
    if (!indicator(a, n) && abs(v.eval(n)) > M)
      fail(ErrorKind::InconsistentDeclaration,
           "|v(" + std::to_string(n) + ")| > M outside the declared exceedance set");
  rep.declared_set = member(ideal, a).verdict;
  rep.bound = 2 * M;
  for (auto si : s) {
    if (indicator(a, si)) {
      rep.F.push_back(si);
      rep.bound += abs(v.eval(si));
    }
  }
  rep.bound.canonicalize();
  Rational running = 0;
  rep.max_pairing = 0;
  for (std::uint64_t n = 0; n <= depth; ++n) {
    running += pow2(-static_cast<std::int64_t>(n)) * v.eval(s[n]);
    rep.max_pairing = std::max(rep.max_pairing, Rational(abs(running)));
  }
  rep.max_pairing.canonicalize();
  rep.passed = rep.max_pairing <= rep.bound;
  return rep;
}

Subfamily select_unbounded_subfamily(const DualPair& p, std::uint64_t count,
                                     std::uint64_t scan_limit, const Rational& threshold_scale) {
  if (threshold_scale <= 0) fail(ErrorKind::InvalidSpec, "threshold scale must be positive");
  YCache y(p.y);
  Subfamily out = greedy_hits(p.B.prefix(scan_limit), y, threshold_scale, count);
  if (out.indices.size() < count)
    fail(ErrorKind::NotFound, "only " + std::to_string(out.indices.size()) +
                                  " qualifying elements within scanLimit=" +
                                  std::to_string(scan_limit));
  return out;
}

// ---------------------------------------------------------------------------
// Negative side

std::string to_string(RecursionMode mode) {
  return mode == RecursionMode::Corrected ? "corrected" : "paperLiteral";
}

namespace {

constexpr std::uint64_t kScanStart = 1000;
constexpr std::uint64_t kScanMax = std::uint64_t{1} << 16;
// Total support entries a scan may hold; doubling stops once the next
// prefix could exceed it.
constexpr std::uint64_t kEntryBudget = std::uint64_t{1} << 22;

struct KTable {
  std::vector<std::uint64_t> m, s, k, s_tilde;
  std::vector<bool> repaired;
};

// max(supp x ∩ supp y)
std::optional<std::uint64_t> top_coordinate(const SeqEntries& x, YCache& y) {
  for (auto it = x.rbegin(); it != x.rend(); ++it)
    if (y(it->first) != 0) return it->first;
  return std::nullopt;
}

KTable build_ktable(const Subfamily& sub, const std::map<std::uint64_t, Rational>& kappa,
                    YCache& y) {
  KTable tab;
  Rational kappa_sum = 0;
  auto next_kappa = kappa.begin();
  for (std::uint64_t n = 0;; ++n) {
    std::uint64_t m;
    bool repaired = false;
    if (n == 0) {
      m = 0;
    } else {
      while (next_kappa != kappa.end() && next_kappa->first <= tab.s_tilde.back()) {
        kappa_sum += next_kappa->second;
        ++next_kappa;
      }
      BigInt target = floor(kappa_sum) + n;
      if (target < BigInt(std::to_string(sub.elements.size()))) {
        m = std::stoull(target.get_str());
      } else {
        m = tab.m.back() + 1;
        repaired = true;
      }
    }
    std::optional<std::uint64_t> k;
    while (m < sub.elements.size()) {
      k = top_coordinate(sub.elements[m], y);
      if (k && (n == 0 || *k > tab.s_tilde.back())) break;
      ++m;
      repaired = true;
    }
    if (m >= sub.elements.size()) break;
    const auto& x = sub.elements[m];
    std::uint64_t s = x.back().first;
    if (n > 0) s = std::max(s, tab.s.back());
    tab.m.push_back(m);
    tab.k.push_back(*k);
    tab.s.push_back(s);
    tab.s_tilde.push_back(std::max(s, *k));
    tab.repaired.push_back(repaired);
  }
  return tab;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("adversary postcondition failed: " + what);
}

}  // namespace

AdversaryTrace adversary_construct(const IdealSpec& ideal, const DualPair& p, std::uint64_t steps,
                                   const HorizonParams& params, RecursionMode mode) {
  params.validate();
  if (is_tall(ideal, params).verdict != Tallness::Tall)
    fail(ErrorKind::NotTall, "ideal " + ideal.name() + " is not certified tall");

  AdversaryTrace tr;
  tr.mode = mode;
  YCache y(p.y);

  for (std::uint64_t scan = kScanStart;; scan *= 2) {
    auto elems = p.B.prefix(scan);
    std::uint64_t entries = 0;
    for (const auto& e : elems) entries += e.size();
    const bool exhausted = elems.size() < scan || 4 * entries > kEntryBudget;
    tr.scan = elems.size();

    // kappa(i) = sup_j |x_j(i) y(i)| over the scan, with raises counted in
    // the last quarter to detect divergence.
    std::map<std::uint64_t, Rational> kappa;
    std::map<std::uint64_t, int> late_raises;
    const std::uint64_t late = (3 * elems.size()) / 4;
    for (std::uint64_t j = 0; j < elems.size(); ++j) {
      for (const auto& [i, val] : elems[j]) {
        Rational w = abs(val * y(i));
        auto [it, fresh] = kappa.emplace(i, w);
        if (!fresh && w > it->second) {
          it->second = w;
          if (j >= late) ++late_raises[i];
        }
      }
    }
    const Rational divergence_level = pow2(64);
    for (const auto& [i, raises] : late_raises) {
      if (raises >= 2 && kappa[i] > divergence_level) {
        tr.first_case = i;
        tr.v = {{i, Rational(1)}};
        tr.kappa = {kappa[i]};
        return tr;
      }
    }

    Subfamily sub = greedy_hits(elems, y, Rational(1), elems.size());
    KTable tab = build_ktable(sub, kappa, y);
    if (tab.k.size() < 2) {
      if (exhausted || scan >= kScanMax)
        fail(ErrorKind::KappaScanInconclusive,
             "pairings with y show no growth over " + std::to_string(elems.size()) + " elements");
      continue;
    }
    TallSubset sel = select_tall_subset(ideal, tab.k, params);
    if (sel.elems.size() < steps + 1) {
      if (exhausted || scan >= kScanMax)
        fail(ErrorKind::SelectionFailed,
             "tall selection found " + std::to_string(sel.elems.size()) + " of " +
                 std::to_string(steps + 1) + " coordinates within a scan of " +
                 std::to_string(elems.size()));
      continue;
    }

    tr.m = tab.m;
    tr.s = tab.s;
    tr.k = tab.k;
    tr.s_tilde = tab.s_tilde;
    tr.repaired = tab.repaired;
    tr.S.assign(sel.elems.begin(), sel.elems.begin() + static_cast<std::ptrdiff_t>(steps + 1));
    tr.S_rule = sel.rule;
    tr.S_certificate = sel.certificate;
    for (auto kv : tr.S)
      tr.t.push_back(static_cast<std::uint64_t>(
          std::lower_bound(tab.k.begin(), tab.k.end(), kv) - tab.k.begin()));

    auto x_of = [&](std::uint64_t n) -> const SeqEntries& { return sub.elements[tab.m[tr.t[n]]]; };
    std::vector<Rational> v_at(steps + 1);
    for (std::uint64_t n = 0; n <= steps; ++n) {
      const Rational& diag = *lookup(x_of(n), tr.S[n]);
      Rational acc = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (mode == RecursionMode::Corrected) {
          if (auto xi = lookup(x_of(n), tr.S[i])) acc += *xi * v_at[i];
        } else {
          acc += *lookup(x_of(i), tr.S[i]) * v_at[i];
        }
      }
      Rational numer = mode == RecursionMode::Corrected ? Rational(from_u64(n) - acc)
                                                        : Rational(from_u64(n) + acc);
      v_at[n] = numer / diag;
      v_at[n].canonicalize();
      tr.kappa.push_back(kappa[tr.S[n]]);
    }
    SeqEntries v_entries;
    for (std::uint64_t n = 0; n <= steps; ++n) v_entries.emplace_back(tr.S[n], v_at[n]);
    Seq v = Seq::finite_support(v_entries);
    tr.v = v.as<seq_node::FiniteSupport>()->entries;

    for (std::uint64_t n = 0; n <= steps; ++n) {
      const SeqEntries& x = x_of(n);
      Rational direct = pair(x, v);
      Rational restricted = 0;
      for (const auto& [i, vi] : tr.v)
        if (auto xi = lookup(x, i)) restricted += *xi * vi;
      check(direct == restricted, "pairing routes disagree at n=" + std::to_string(n));
      for (std::uint64_t i = n + 1; i <= steps; ++i)
        check(tr.S[i] > tab.s[tr.t[n]], "truncation at n=" + std::to_string(n));
      if (mode == RecursionMode::Corrected)
        check(direct == from_u64(n), "pairing != n at n=" + std::to_string(n));
      tr.pairings.push_back(direct);
    }
    for (const auto& [i, vi] : tr.v)
      check(std::binary_search(tr.S.begin(), tr.S.end(), i), "supp v outside S");
    std::vector<std::uint64_t> s_elems = tr.S;
    tr.S_trace = horizon_trace(ideal, SetExpr::finite(std::move(s_elems)), params);
    return tr;
  }
}

// ---------------------------------------------------------------------------
// Domination counterexample

BKCounterexample bk_counterexample(const IdealSpec& ideal, const Seq& y,
                                   const HorizonParams& params) {
  params.validate();
  ideal.validate();
  if (ideal.as<ideal_node::Fin>())
    fail(ErrorKind::NotApplicable, "every sequence in c0(Fin) is dominated by y = (1,1,...)");
  BKCounterexample out;
  constexpr std::uint64_t kRefuteMax = std::uint64_t{1} << 20;

  std::vector<std::uint64_t> reach;  // S up to just beyond 2^20
  for (auto rule : {SparseRule::PowersOfTwo, SparseRule::Squares, SparseRule::Factorials}) {
    SetExpr cand = SetExpr::sparse(rule);
    TriState t = member(ideal, cand, params);
    if (t.verdict == Verdict::In) {
      out.S = cand;
      out.support = t;
      reach = enumerate_prefix(cand, 4 * kRefuteMax);
      break;
    }
  }
  if (!out.S) {
    if (is_tall(ideal, params).verdict != Tallness::Tall)
      fail(ErrorKind::NotApplicable, "no infinite set in the ideal is available for " + ideal.name());
    TallSubset w = tall_subset_witness(ideal, SetExpr::omega(), params);
    HorizonParams wide = params;
    wide.N = 4 * kRefuteMax;
    std::vector<std::uint64_t> all(wide.N);
    for (std::uint64_t n = 0; n < wide.N; ++n) all[n] = n;
    reach = select_tall_subset(ideal, all, wide).elems;
    out.support.verdict = Verdict::In;
    out.support.certificate = w.certificate;
    out.support.trace = w.trace;
  }

  auto x_at = [&y](std::uint64_t n) {
    Rational v = from_u64(n) * (abs(y.eval(n)) + 1);
    v.canonicalize();
    return v;
  };
  std::uint64_t last = 0;
  for (std::uint64_t C = 1; C <= kRefuteMax; C *= 2) {
    auto it = std::upper_bound(reach.begin(), reach.end(), C);
    if (it == reach.end())
      fail(ErrorKind::InsufficientHorizon, "support enumeration ends before C=" + std::to_string(C));
    Rational bound = from_u64(C) * abs(y.eval(*it));
    bound.canonicalize();
    out.refutations.push_back({from_u64(C), *it, x_at(*it), bound});
    last = *it;
  }

  // The prefix of x runs through the horizon and every refutation point.
  SeqEntries entries;
  out.ratio_exact = true;
  for (auto n : reach) {
    if (n >= params.N && n > last) break;
    out.S_prefix.push_back(n);
    Rational xv = x_at(n);
    if (xv != 0) entries.emplace_back(n, xv);
    Rational ratio = xv / (abs(y.eval(n)) + 1);
    if (ratio != from_u64(n)) out.ratio_exact = false;
  }
  out.x = Seq::finite_support(std::move(entries));
  return out;
}

}  // namespace omega
