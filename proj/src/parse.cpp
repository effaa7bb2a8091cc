#include "padicfs/parse.hpp"

#include <cctype>

namespace padicfs {

namespace {

struct Parser {
  std::string_view src;
  int n;
  std::size_t pos = 0;

  void skipSpace() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool accept(char c) {
    skipSpace();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }

  Polynomial expression() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos;
        Polynomial d = unary();
        if (!d.isConstant() || d.isZero()) throw ParseError("division by a nonconstant or zero", at);
        acc = acc.scaled(1 / d.coefficient(MultiIndex(n, 0)));
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skipSpace();
    const std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos == start) fail("expected a nonnegative integer exponent");
    const std::string digits(src.substr(start, pos - start));
    if (digits.size() > 4) throw ParseError("exponent too large", start);
    return base.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  Polynomial primary() {
    skipSpace();
    if (pos >= src.size()) fail("unexpected end of input");
    const char c = src[pos];
    if (c == '(') {
      ++pos;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      return Polynomial::constant(n, Rational(std::string(src.substr(start, pos - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      while (pos < src.size() && std::isalnum(static_cast<unsigned char>(src[pos]))) ++pos;
      const int index = variableIndex(src.substr(start, pos - start), start);
      if (index >= n) {
        throw ParseError("variable " + std::string(src.substr(start, pos - start)) +
                             " exceeds dimension " + std::to_string(n),
                         start);
      }
      return Polynomial::variable(n, index);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  /// 0-based index for x, xi, x<k>, xi<k>; throws on anything else.
  int variableIndex(std::string_view name, std::size_t at) const {
    std::string_view digits;
    if (name == "x" || name == "xi") {
      if (n != 1) throw ParseError("bare variable " + std::string(name) + " needs dimension 1", at);
      return 0;
    }
    if (name.starts_with("xi")) {
      digits = name.substr(2);
    } else if (name.starts_with("x")) {
      digits = name.substr(1);
    }
    bool ok = !digits.empty() && digits.size() <= 6 && digits.front() != '0';
    for (char d : digits) ok = ok && std::isdigit(static_cast<unsigned char>(d));
    if (!ok) throw ParseError("unknown identifier '" + std::string(name) + "'", at);
    return std::stoi(std::string(digits)) - 1;
  }
};

}  // namespace

Polynomial parsePolynomial(std::string_view src, int n) {
  if (n < 1) throw Error("dimension must be positive");
  Parser parser{src, n};
  Polynomial f = parser.expression();
  parser.skipSpace();
  if (parser.pos != src.size()) parser.fail("unexpected trailing input");
  return f;
}

int inferDimension(std::string_view src) {
  int n = 1;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] != 'x' || (i > 0 && std::isalnum(static_cast<unsigned char>(src[i - 1])))) continue;
    std::size_t j = i + 1;
    if (j < src.size() && src[j] == 'i') ++j;
    const std::size_t start = j;
    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
    if (j > start && j - start <= 6) n = std::max(n, std::stoi(std::string(src.substr(start, j - start))));
  }
  return n;
}

}  // namespace padicfs
