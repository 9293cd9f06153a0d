#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vcreg {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "num/den" or a bare integer. Decimals are rejected.
Rational parse_rational(std::string_view text);

// Always "num/den", also for integers ("1/1").
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// n/d in lowest terms; d != 0.
Rational ratio(const Integer& n, const Integer& d);

Integer binomial(unsigned long n, unsigned long k);
Integer pow2(unsigned long e);
Rational pow(const Rational& base, unsigned long e);

// Sum_{i<=d} C(n, i).
Integer sauer_bound(unsigned long n, unsigned long d);

double to_double(const Rational& q);

}  // namespace vcreg
