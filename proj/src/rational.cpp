#include "gpdind/rational.hpp"

#include <cctype>

#include "gpdind/error.hpp"

namespace gpdind {

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto num = text.substr(0, slash);
  auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den)) {
    fail(ErrorKind::MalformedSpec, "not a rational number: '" + std::string(text) + "'");
  }
  using boost::multiprecision::cpp_int;
  cpp_int n(std::string(num.front() == '+' ? num.substr(1) : num));
  cpp_int d(std::string(den.front() == '+' ? den.substr(1) : den));
  if (d == 0) fail(ErrorKind::MalformedSpec, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& q) {
  auto n = boost::multiprecision::numerator(q);
  auto d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace gpdind
