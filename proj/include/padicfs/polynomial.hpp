#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicfs/rational.hpp"

namespace padicfs {

using MultiIndex = std::vector<int>;

/// Sparse polynomial in n variables with exact rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  explicit Polynomial(int n = 1);
  Polynomial(int n, Terms terms);

  static Polynomial constant(int n, const Rational& c);
  static Polynomial variable(int n, int index);

  int dimension() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  int totalDegree() const;
  /// Degree D when every monomial has total degree D; nullopt otherwise (and for 0).
  std::optional<int> homogeneousDegree() const;

  Rational coefficient(const MultiIndex& alpha) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Hasse (divided-power) Taylor coefficients at a: f(a+h) = Σ_α f_α(a) h^α.
  /// Only nonzero coefficients are present.
  Terms hasseTaylor(std::span<const Rational> a) const;

  Polynomial partial(int index) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned k) const;

  bool operator==(const Polynomial& other) const = default;

  /// Prints in the input grammar, e.g. "3/5*x1^2*x2 - x3 + 7".
  std::string toString() const;

 private:
  void prune();

  int n_;
  Terms terms_;
};

}  // namespace padicfs
