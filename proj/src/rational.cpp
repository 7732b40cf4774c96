#include "omega/rational.hpp"

#include <cctype>

#include "omega/error.hpp"

namespace omega {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(ErrorKind::InvalidSpec, "malformed rational: " + std::string(text));
    BigInt d(std::string(den), 10);
    if (d == 0) fail(ErrorKind::InvalidSpec, "zero denominator: " + std::string(text));
    out = Rational(BigInt(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      fail(ErrorKind::InvalidSpec, "malformed decimal: " + std::string(text));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    out = Rational(digits, scale);
  } else {
    if (!all_digits(body)) fail(ErrorKind::InvalidSpec, "malformed rational: " + std::string(text));
    out = Rational(BigInt(std::string(body), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational from_u64(std::uint64_t n) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return Rational(z);
}

Rational pow2(std::int64_t exponent) {
  BigInt one = 1;
  BigInt p;
  if (exponent >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  return Rational(BigInt(1), p);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

// Stern-Brocot descent; terminates because the interval has positive width
// or contains its own endpoint.
Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  Rational lo = lo_in, hi = hi_in;
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  BigInt fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl; recurse on reciprocals of fractional parts.
  Rational inner = simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  Rational out = Rational(fl) + Rational(1) / inner;
  out.canonicalize();
  return out;
}

}  // namespace omega
