#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "omega/ideals.hpp"
#include "omega/seq.hpp"

namespace omega {

/// Exact {n <= N : x(n) != 0}.
SetExpr support_prefix(const Seq& x, std::uint64_t N);

/// member(ideal, {n : |x(n) - eta| > eps}).
TriState ideal_limit_estimate(const IdealSpec& ideal, const Seq& x, const Rational& eta,
                              const Rational& eps, const HorizonParams& params = {});

struct SpaceFlag {
  Verdict verdict = Verdict::Unknown;
  std::string certificate;
};

struct SpaceReport {
  SpaceFlag c00, c0, c, linf;
  std::optional<Rational> limit;  // certified I-limit when c is In
  std::optional<Rational> bound;  // M certifying linf
};

SpaceReport classify_space(const IdealSpec& ideal, const Seq& x, const HorizonParams& params = {});

enum class IndicatorClass { Convergent, NotConvergent, Unknown };
std::string to_string(IndicatorClass c);

struct IndicatorReport {
  IndicatorClass verdict = IndicatorClass::Unknown;
  std::optional<Rational> limit;  // 0 or 1 when Convergent
  std::string certificate;
};

IndicatorReport classify_indicator(const IdealSpec& ideal, const SetExpr& a,
                                   const HorizonParams& params = {});

}  // namespace omega
