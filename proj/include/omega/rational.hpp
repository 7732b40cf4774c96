#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace omega {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p", or a decimal literal such as "-0.25". Throws InvalidSpec.
Rational parse_rational(std::string_view text);

/// Canonical lowest-terms form with positive denominator ("7/2", "-3", "0").
std::string to_string(const Rational& q);

Rational from_u64(std::uint64_t n);
Rational pow2(std::int64_t exponent);
Rational abs(const Rational& q);
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);
double to_double(const Rational& q);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace omega
