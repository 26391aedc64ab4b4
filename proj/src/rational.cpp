#include "qtsp/rational.hpp"

#include <cctype>
#include <ostream>

namespace qtsp {

namespace {

// [+-]?digits, at least one digit, no other characters
bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!valid_integer(num) || !valid_integer(den)) {
    throw std::invalid_argument("Rational: malformed value '" + std::string(text) + "'");
  }
  // mpz accepts a leading '-' but not '+'
  auto strip_plus = [](std::string_view s) {
    return std::string(s.front() == '+' ? s.substr(1) : s);
  };
  Rational r;
  r.v_ = mpq_class(mpz_class(strip_plus(num)), mpz_class(strip_plus(den)));
  if (r.v_.get_den() == 0) {
    throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
  }
  r.v_.canonicalize();
  return r;
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

}  // namespace qtsp
