#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ltlf {

// Exact weights and thresholds. Denominators stay small in practice
// (bounded by twice the sample size), so 64-bit components suffice.
// Note: with Boost 1.74 under C++20, `r == 1` and `r != 1` recurse forever
// through the rewritten comparison candidates. Compare against Rational(1).
using Rational = boost::rational<std::int64_t>;

// Parses "0.05", "1/3", "2" or "1e-3" exactly. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

// "1/3", "0", "3".
std::string to_string(const Rational& r);

// Decimal rendering with the given number of fractional digits.
std::string to_decimal(const Rational& r, int digits = 6);

std::int64_t floor(const Rational& r);

std::int64_t lcm_of_denominators(std::int64_t acc, const Rational& r);

} // namespace ltlf
