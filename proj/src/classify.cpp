#include "omega/classify.hpp"

#include "omega/error.hpp"

namespace omega {

std::string to_string(FKClass c) {
  switch (c) {
    case FKClass::Admits: return "admits";
    case FKClass::DoesNotAdmit: return "doesNotAdmit";
    case FKClass::Undecided: return "undecided";
  }
  return "?";
}

FKReport fk_classify(const IdealSpec& ideal, const HorizonParams& params, std::uint64_t depth,
                     std::uint64_t steps) {
  FKReport rep;
  TallnessReport t = is_tall(ideal, params);
  rep.criterion = t.criterion;
  if (t.verdict == Tallness::NotTall) {
    rep.witness_set = *t.witness;
    DualPair p = positive_witness(*t.witness, depth);
    auto elems = p.B.prefix(depth + 1);
    rep.growth_ok = true;
    for (std::uint64_t n = 0; n <= depth; ++n) {
      rep.positive_pairings.push_back(pair(elems[n], p.y));
      rep.growth_ok &= rep.positive_pairings.back() >= from_u64(n + 1);
    }
    if (rep.growth_ok) rep.verdict = FKClass::Admits;
  } else if (t.verdict == Tallness::Tall) {
    DualPair p{BFamily::diagonal(), Seq::constant(Rational(1))};
    rep.adversary = adversary_construct(ideal, p, steps, params);
    bool ok = !rep.adversary->first_case.has_value();
    for (std::uint64_t n = 0; ok && n < rep.adversary->pairings.size(); ++n)
      ok = rep.adversary->pairings[n] == from_u64(n);
    if (ok) rep.verdict = FKClass::DoesNotAdmit;
  }
  return rep;
}

NoninclusionReport noninclusion_witness(const IdealSpec& tall, const IdealSpec& nontall,
                                        const HorizonParams& params) {
  if (is_tall(tall, params).verdict != Tallness::Tall)
    fail(ErrorKind::NotApplicable, "first ideal must be certified tall");
  NoninclusionReport rep;
  rep.S = nontall_witness(nontall, params);

  // S' = S ∩ T for the first sparse catalog set T that lands in I.
  bool found = false;
  for (auto rule : {SparseRule::PowersOfTwo, SparseRule::Squares, SparseRule::Factorials}) {
    SetExpr cand = SetExpr::intersect({rep.S, SetExpr::sparse(rule)});
    auto cells = analyze_cells(cand);
    if (!cells || cells->is_finite()) continue;
    TriState in_I = member(tall, cand, params);
    if (in_I.verdict != Verdict::In) continue;
    rep.S_prime = cand;
    found = true;
    break;
  }
  if (!found)
    fail(ErrorKind::SelectionFailed, "no sparse subset of the witness set is certified in I");

  rep.x = Seq::masked(Seq::identity(), rep.S_prime);
  rep.support_in_I = member(tall, support(rep.x), params);
  rep.S_prime_in_J = member(nontall, rep.S_prime, params);

  bool all = true;
  for (int j = 0; j <= 16; ++j) {
    LadderEntry e;
    e.M = pow2(j);
    SetExpr missed = SetExpr::intersect(
        {rep.S_prime, SetExpr::complement(exceedance_set(rep.x, Rational(0), e.M))});
    auto cells = analyze_cells(missed);
    e.certified = cells && cells->is_finite();
    if (e.certified) e.excluded = enumerate_prefix(missed, cells->threshold);
    all &= e.certified;
    rep.ladder.push_back(std::move(e));
  }
  rep.decided = all && rep.support_in_I.verdict == Verdict::In &&
                rep.S_prime_in_J.verdict == Verdict::Out;
  return rep;
}

}  // namespace omega
