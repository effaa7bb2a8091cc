#include "padicfs/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace padicfs {

namespace {

bool isIntegerLiteral(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parseInteger(std::string_view s) {
  std::string text(s);
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  return Integer(text, 10);
}

}  // namespace

Rational parseRational(std::string_view text) {
  auto slash = text.find('/');
  auto num = text.substr(0, slash);
  if (!isIntegerLiteral(num)) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  Rational r(parseInteger(num));
  if (slash != std::string_view::npos) {
    auto den = text.substr(slash + 1);
    if (!isIntegerLiteral(den) || den[0] == '-' || den[0] == '+') {
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
    Integer d = parseInteger(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r = Rational(parseInteger(num), d);
    r.canonicalize();
  }
  return r;
}

std::string toString(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer ipow(long base, unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(base >= 0 ? base : -base),
                exponent);
  if (base < 0 && (exponent % 2) == 1) result = -result;
  return result;
}

Rational powP(long p, long k) {
  if (k >= 0) return Rational(ipow(p, static_cast<unsigned long>(k)));
  return Rational(Integer(1), ipow(p, static_cast<unsigned long>(-k)));
}

double toDouble(const Rational& r) { return r.get_d(); }

}  // namespace padicfs
