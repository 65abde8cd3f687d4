// SPDX-License-Identifier: Apache-2.0
#include "bilmult/exact.hpp"

#include "bilmult/error.hpp"

namespace bilmult {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParameterTooLarge: return "ParameterTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::MissingAq: return "MissingAq";
    case ErrorCode::Singular: return "Singular";
  }
  return "Unknown";
}

BigInt big_pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw Error(ErrorCode::OutOfRange, "isqrt of a negative number");
  if (x < 2) return x;
  return boost::multiprecision::sqrt(x);
}

bool is_perfect_square(const BigInt& x) {
  if (x < 0) return false;
  const BigInt s = isqrt(x);
  return s * s == x;
}

BigInt floor_of(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

namespace {

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

int sign_of_quadratic_surd(const Rational& a, const Rational& b, const BigInt& c) {
  if (c < 0) throw Error(ErrorCode::OutOfRange, "negative radicand");
  const int sa = sign(a);
  const int sb = c == 0 ? 0 : sign(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 c.
  const Rational lhs = a * a;
  const Rational rhs = b * b * Rational(c);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& r) {
  if (q < 2) return false;
  std::uint64_t d = 2;
  while (d * d <= q && q % d != 0) ++d;
  if (q % d != 0) d = q;
  unsigned e = 0;
  std::uint64_t m = q;
  while (m % d == 0) {
    m /= d;
    ++e;
  }
  if (m != 1) return false;
  p = d;
  r = e;
  return true;
}

}  // namespace bilmult

namespace bilmult {

BigInt epsilon(const BigInt& q) {
  if (q < 2) throw Error(ErrorCode::OutOfRange, "epsilon needs q >= 2");
  if (is_perfect_square(q)) return 2 * isqrt(q);
  BigInt e = isqrt(4 * q);
  while (e > 1 && boost::multiprecision::gcd(e, q) != 1) --e;
  return e;
}

}  // namespace bilmult
