#ifndef FAIRDIV_RATIONAL_HPP
#define FAIRDIV_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fairdiv {

// Arbitrary-precision rational kept in canonical form by GMP.
using Rational = mpq_class;

// Parses "7", "-3", "2/5" or "4/10" (reduced on read). Throws ParseError.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Fixed-point rendering for human-facing tables; never used in decisions.
std::string to_decimal(const Rational& value, int digits = 6);

}  // namespace fairdiv

#endif  // FAIRDIV_RATIONAL_HPP
