#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace probinfo {

/// Exact rational arithmetic for weights and mixture coefficients.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);
/// Canonical form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);
/// Correctly scaled log2 for arbitrarily large or small rationals;
/// -infinity for zero. Throws DomainError for negative input.
double log2_rational(const Rational& q);
/// num/den in canonical form (gmpxx's two-argument constructor is not).
Rational ratio(long num, long den);

/// 2^e as an exact rational (e may be negative).
Rational pow2(long e);

}  // namespace probinfo
