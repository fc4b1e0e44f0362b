#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "qtoric/errors.hpp"

namespace qtoric {

/// Arbitrary-precision integer. All lattice computations are exact.
using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational. All polytope computations are exact.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

/// Parses "p/q" or "p" (optionally signed) into an exact rational.
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical serialization: "p" when the denominator is 1, else "p/q" with q > 0.
std::string format_rational(const Rational& r);

}  // namespace qtoric
