#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omega/duality.hpp"
#include "omega/ideals.hpp"
#include "omega/seq.hpp"

namespace omega {

/// Whether c00(I) carries a weaker FK topology than the one inherited from
/// R^omega; decided through tallness with a re-validated witness bundle.
enum class FKClass { Admits, DoesNotAdmit, Undecided };
std::string to_string(FKClass c);

struct FKReport {
  FKClass verdict = FKClass::Undecided;
  std::string criterion;
  // Admits: positive witness on the non-tall witness set.
  std::optional<SetExpr> witness_set;
  std::vector<Rational> positive_pairings;  // B_n . y for n <= depth
  bool growth_ok = false;                   // B_n . y >= n + 1
  // DoesNotAdmit: adversary on B = {2^n e_n}, y = 1.
  std::optional<AdversaryTrace> adversary;
};

FKReport fk_classify(const IdealSpec& ideal, const HorizonParams& params = {},
                     std::uint64_t depth = 64, std::uint64_t steps = 20);

struct LadderEntry {
  Rational M;
  std::vector<std::uint64_t> excluded;  // elements of S' outside {|x| > M}
  bool certified = false;               // excluded set proven finite
};

/// x in c00(I) with x outside linf(J), for tall I and non-tall J.
struct NoninclusionReport {
  Seq x = Seq::finite_support({});
  SetExpr S = SetExpr::omega();        // non-tall witness of J
  SetExpr S_prime = SetExpr::omega();  // infinite subset of S inside I
  TriState support_in_I;
  TriState S_prime_in_J;
  std::vector<LadderEntry> ladder;  // M = 2^0 .. 2^16
  bool decided = false;
};

NoninclusionReport noninclusion_witness(const IdealSpec& tall, const IdealSpec& nontall,
                                        const HorizonParams& params = {});

}  // namespace omega
