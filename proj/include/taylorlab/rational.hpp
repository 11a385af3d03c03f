#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace taylorlab {

// Arbitrary-precision integers and rationals. boost::multiprecision keeps
// rationals in lowest terms with a positive denominator, which is exactly
// the canonical form the exact mode relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational rational_pow(const Rational& base, long exponent);
Rational rational_abs(const Rational& value);
int rational_sign(const Rational& value);
double rational_to_double(const Rational& value);

// "p/q" when the denominator is not 1, plain integer text otherwise.
std::string rational_to_string(const Rational& value);

// Accepts "p/q", integers, and decimal literals with an optional exponent
// ("0.25", "-3", "1/3", "2.5e-3"). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace taylorlab
