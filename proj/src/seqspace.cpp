#include "omega/seqspace.hpp"

#include <algorithm>

#include "omega/error.hpp"

namespace omega {

SetExpr support_prefix(const Seq& x, std::uint64_t N) {
  return SetExpr::finite(enumerate_prefix(support(x), N));
}

TriState ideal_limit_estimate(const IdealSpec& ideal, const Seq& x, const Rational& eta,
                              const Rational& eps, const HorizonParams& params) {
  if (eps <= 0) fail(ErrorKind::InvalidSpec, "tolerance must be positive");
  return member(ideal, exceedance_set(x, eta, eps), params);
}

namespace {

// Below this tolerance the exceedance sets around eta agree modulo finite
// sets: every piece of x tends to a value at distance 0 or >= 2 eps_star.
Rational stable_tolerance(const Accumulation& acc, const Rational& eta) {
  Rational best = 1;
  for (const auto& a : acc.values)
    if (a != eta) best = std::min(best, Rational(abs(a - eta) / 2));
  best.canonicalize();
  return best;
}

SpaceFlag flag_of(const TriState& t, const std::string& what) {
  return {t.verdict, t.verdict == Verdict::Unknown ? "" : what + " (" + t.certificate + ")"};
}

}  // namespace

SpaceReport classify_space(const IdealSpec& ideal, const Seq& x, const HorizonParams& params) {
  ideal.validate();
  SpaceReport rep;
  const Accumulation acc = accumulation(x);

  rep.c00 = flag_of(member(ideal, support(x), params), "support");

  // c0 and c: the exceedance set at the stable tolerance decides every
  // smaller tolerance modulo Fin, and larger tolerances give subsets.
  auto limit_flag = [&](const Rational& eta) {
    Rational eps = stable_tolerance(acc, eta);
    TriState t = member(ideal, exceedance_set(x, eta, eps), params);
    return std::pair{t, eps};
  };
  {
    auto [t, eps] = limit_flag(Rational(0));
    rep.c0 = flag_of(t, "exceedance set at eta=0, eps=" + to_string(eps));
  }
  std::vector<Rational> candidates = acc.values;
  for (int v : {0, 1})
    if (std::find(candidates.begin(), candidates.end(), Rational(v)) == candidates.end())
      candidates.emplace_back(v);
  bool any_unknown = false;
  for (const auto& eta : candidates) {
    auto [t, eps] = limit_flag(eta);
    if (t.verdict == Verdict::In) {
      rep.c = flag_of(t, "exceedance set at eta=" + to_string(eta) + ", eps=" + to_string(eps));
      rep.limit = eta;
      break;
    }
    any_unknown |= t.verdict == Verdict::Unknown;
  }
  if (!rep.limit && !any_unknown) {
    // Any other eta leaves every piece outside a neighbourhood: cofinite exceedance.
    rep.c = {Verdict::Out, "no accumulation value is an I-limit; other limits give cofinite "
                           "exceedance sets"};
  }

  if (auto m = sup_abs(x)) {
    rep.linf = {Verdict::In, "bounded: |x(n)| <= " + to_string(*m) + " for all n"};
    rep.bound = *m;
  } else {
    Rational top = pow2(16);
    for (const auto& a : acc.values) top = std::max(top, Rational(abs(a) + 1));
    std::vector<Rational> ladder;
    for (int j = 0; j <= 16; ++j) ladder.push_back(pow2(j));
    if (top > ladder.back()) ladder.push_back(top);
    bool unknown = false;
    for (const auto& M : ladder) {
      TriState t = member(ideal, exceedance_set(x, Rational(0), M), params);
      if (t.verdict == Verdict::In) {
        rep.linf = flag_of(t, "{|x| > " + to_string(M) + "}");
        rep.bound = M;
        break;
      }
      unknown |= t.verdict == Verdict::Unknown;
    }
    if (!rep.bound && !unknown)
      rep.linf = {Verdict::Out, "{|x| > M} is outside the ideal for M = 1, 2, ..., " +
                                    to_string(ladder.back()) +
                                    "; beyond that the sets agree modulo finite sets"};
  }

  // c00 ⊆ c0 ⊆ c ⊆ linf.
  SpaceFlag* chain[] = {&rep.c00, &rep.c0, &rep.c, &rep.linf};
  for (int i = 0; i < 3; ++i)
    if (chain[i]->verdict == Verdict::In && chain[i + 1]->verdict == Verdict::Unknown)
      *chain[i + 1] = {Verdict::In, "implied by the smaller space"};
  for (int i = 3; i > 0; --i)
    if (chain[i]->verdict == Verdict::Out && chain[i - 1]->verdict == Verdict::Unknown)
      *chain[i - 1] = {Verdict::Out, "implied by the larger space"};
  if (rep.c0.verdict == Verdict::In && !rep.limit) rep.limit = Rational(0);
  return rep;
}

std::string to_string(IndicatorClass c) {
  switch (c) {
    case IndicatorClass::Convergent: return "Convergent";
    case IndicatorClass::NotConvergent: return "NotConvergent";
    case IndicatorClass::Unknown: return "Unknown";
  }
  return "?";
}

IndicatorReport classify_indicator(const IdealSpec& ideal, const SetExpr& a,
                                   const HorizonParams& params) {
  IndicatorReport rep;
  TriState in = member(ideal, a, params);
  if (in.verdict == Verdict::In) {
    rep.verdict = IndicatorClass::Convergent;
    rep.limit = Rational(0);
    rep.certificate = "set in ideal: " + in.certificate;
    return rep;
  }
  TriState dual = dual_member(ideal, a, params);
  if (dual.verdict == Verdict::In) {
    rep.verdict = IndicatorClass::Convergent;
    rep.limit = Rational(1);
    rep.certificate = "complement in ideal: " + dual.certificate;
    return rep;
  }
  if (in.verdict == Verdict::Out && dual.verdict == Verdict::Out) {
    rep.verdict = IndicatorClass::NotConvergent;
    rep.certificate = "set and complement both outside: " + in.certificate + "; " +
                      dual.certificate;
  }
  return rep;
}

}  // namespace omega
