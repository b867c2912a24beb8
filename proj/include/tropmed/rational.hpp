#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace tropmed {

// All arithmetic in this library is exact. Rat is an arbitrary-precision
// rational, Int an arbitrary-precision integer.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Parses an exact rational literal: "p/q", a plain integer, or a decimal
// with optional exponent ("-12.25", "3e-2", ".5"). Throws
// std::invalid_argument on malformed input.
Rat parse_rational(std::string_view text);

// Shortest exact decimal when the denominator has only the prime factors
// 2 and 5, otherwise "p/q".
std::string format_rational(const Rat& value);

std::string format_vector(const std::vector<Rat>& values,
                          const std::string& sep = " ");

}  // namespace tropmed
