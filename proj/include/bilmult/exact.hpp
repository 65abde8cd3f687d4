// SPDX-License-Identifier: Apache-2.0
#pragma once

// Arbitrary-precision integer and rational helpers shared by the tower and bound code.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bilmult {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(const BigInt& base, std::uint64_t exponent);

// floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);
bool is_perfect_square(const BigInt& x);

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

// Exact comparison of a + b*sqrt(c) against zero, with a, b rational and c >= 0 integer.
int sign_of_quadratic_surd(const Rational& a, const Rational& b, const BigInt& c);

// Prime power decomposition q = p^r; returns false when q is not a prime power.
bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& r);
bool is_prime(std::uint64_t n);

// 2*sqrt(q) when q is a square, otherwise the largest integer <= 2*sqrt(q) prime to q.
BigInt epsilon(const BigInt& q);

}  // namespace bilmult
