#pragma once

#include <string>
#include <string_view>

#include "padicfs/padic.hpp"
#include "padicfs/polynomial.hpp"

namespace padicfs {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

/// Grammar: sums and differences of products of powers, with rational literals, parentheses,
/// unary signs and nonnegative integer exponents. Variables are x1..xn (also xi1..xin); when
/// n = 1, "x" and "xi" name x1. Division is allowed by nonzero constants only.
Polynomial parsePolynomial(std::string_view src, int n);

/// Smallest n for which every variable in `src` is in range (1 for "x"/"xi" or no variables).
int inferDimension(std::string_view src);

}  // namespace padicfs
