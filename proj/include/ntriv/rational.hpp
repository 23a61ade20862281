#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ntriv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" or "p"; throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);
/// "p/q" in lowest terms, or "p" when integral.
std::string format_rational(const Rational& r);

}  // namespace ntriv
