#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gpdind {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q". Throws Error(MalformedSpec) on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace gpdind
