#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace setqm {

// Arbitrary precision, always reduced, denominator positive.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& r);

}  // namespace setqm
