#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace autoseq {

/// Exact ratio used for witnesses, bounds and dilation samples.
using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p". Throws Error(Parse) on malformed input.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

}  // namespace autoseq
