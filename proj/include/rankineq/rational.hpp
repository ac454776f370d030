#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rankineq {

using Rational = mpq_class;
using BigInt = mpz_class;

// Always "num/den" with den >= 1, e.g. "4/3", "-1/1", "0/1".
std::string to_fraction_string(const Rational& q);

// Accepts "a", "a/b", "-a/b" (surrounding whitespace ignored). Throws ParseError.
Rational parse_rational(std::string_view text);

// Decimal rendering rounded half away from zero, e.g. to_decimal_string(4/3, 6) == "1.333333".
std::string to_decimal_string(const Rational& q, int places);

// "4/3 (~1.333333)": exact value plus a decimal approximation marked as such.
std::string to_display_string(const Rational& q);

}  // namespace rankineq
