#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace stn {

using BigInt = boost::multiprecision::mpz_int;

// Always stored reduced with a positive denominator (mpq canonical form).
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

bool fits_u64(const BigInt& x);
std::uint64_t to_u64(const BigInt& x);  // UsageError if negative or too wide

// floor(r) for r >= 0.
BigInt floor_nonneg(const Rational& r);

// Product of a list of machine-word factors, multiplied as a balanced tree so
// very long lists (millions of primes) stay near the FFT-friendly regime.
BigInt balanced_product(const std::vector<std::uint64_t>& factors);

// Exact decimal rendering of r >= 0 with `sig_digits` significant digits,
// final digit rounded half-even. Never uses scientific notation; values in
// [0,1) render as "0.xxx". r == 0 renders as "0".
std::string to_decimal_string(const Rational& r, int sig_digits = 15);

}  // namespace stn
