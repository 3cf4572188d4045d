#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace orbicover {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", "p" or "-p/q". Throws ValidationError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

/// floor(value) as a machine integer. The value must fit in a long.
long floor_to_long(const Rational& value);

}  // namespace orbicover
