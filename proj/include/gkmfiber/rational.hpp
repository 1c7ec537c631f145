#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace gkmfiber {

// Arbitrary precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

// Builds num/den in canonical form. Throws InvalidArgument when den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

} // namespace gkmfiber
