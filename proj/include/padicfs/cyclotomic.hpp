#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "padicfs/rational.hpp"

namespace padicfs {

/// An element of the cyclotomic field Q(ζ_m), ζ_m = exp(2πi/m), stored sparsely by its
/// coordinates in the power basis 1, ζ, …, ζ^{φ(m)−1} (i.e. reduced modulo Φ_m). Elements of
/// different orders are combined in Q(ζ_lcm).
class Cyclo {
 public:
  Cyclo();
  Cyclo(const Rational& q);  // NOLINT(google-explicit-constructor): Q ⊂ Q(ζ)
  Cyclo(long q) : Cyclo(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  /// ζ_m^k.
  static Cyclo root(long m, long k);

  long order() const { return m_; }
  /// Nonzero coordinates, exponent → coefficient.
  const std::map<long, Rational>& coefficients() const { return c_; }

  /// Same element expressed in Q(ζ_M); requires order() | M.
  Cyclo liftedTo(long M) const;

  bool isZero() const;
  bool isRational() const;
  /// Throws unless isRational().
  Rational rationalValue() const;

  Cyclo conj() const;
  std::complex<double> toComplex() const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  Cyclo operator-() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);

  /// Human-readable form such as "1/3 + 2*z9^2" (zM = exp(2πi/M)).
  std::string toString() const;
  /// Parses the toString form back.
  static Cyclo parse(const std::string& text);

 private:
  Cyclo(long m, std::map<long, Rational> c);
  void reduce();

  long m_;
  std::map<long, Rational> c_;
};

/// Euler's totient.
long eulerPhi(long m);
long lcmLong(long a, long b);

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<Integer>& cyclotomicPolynomial(long m);

}  // namespace padicfs
