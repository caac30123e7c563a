#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace remy {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// "num/den" (always with a denominator, even when it is 1).
std::string to_fraction_string(const Rational& q);

// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Rational parse_fraction(std::string_view text);

Integer factorial(unsigned n);

// 1 * 3 * ... * (2n - 1); 1 for n = 0.
Integer double_factorial_odd(unsigned n);

// lo * (lo + 1) * ... * hi; 1 when hi < lo.
Integer rising_product(unsigned lo, unsigned hi);

Integer binomial(unsigned n, unsigned k);

// 2^k as an exact integer.
Integer pow2(unsigned k);

double to_double(const Rational& q);

}  // namespace remy
