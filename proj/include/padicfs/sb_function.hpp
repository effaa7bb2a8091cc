#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "padicfs/ball.hpp"
#include "padicfs/cyclotomic.hpp"

namespace padicfs {

using Complex = std::complex<double>;

/// Coefficient backends: exact cyclotomic (certification paths) and complex double (solver
/// paths).
template <class C>
struct CoefOps;

template <>
struct CoefOps<Cyclo> {
  static Cyclo zero() { return Cyclo(); }
  static bool isZero(const Cyclo& c) { return c.isZero(); }
  static Cyclo fromRational(const Rational& q) { return Cyclo(q); }
  static Cyclo conj(const Cyclo& c) { return c.conj(); }
  static Complex toComplex(const Cyclo& c) { return c.toComplex(); }
  /// Ψ(x) = exp(2πi {x}_p) as an exact p-power root of unity.
  static Cyclo psi(long p, const Rational& x);
};

template <>
struct CoefOps<Complex> {
  static Complex zero() { return {0.0, 0.0}; }
  static bool isZero(const Complex& c) { return c == Complex(0.0, 0.0); }
  static Complex fromRational(const Rational& q) { return {toDouble(q), 0.0}; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex toComplex(const Complex& c) { return c; }
  static Complex psi(long p, const Rational& x);
};

/// Support and constancy exponents: support ⊆ p^{-M} Z_p^n, constant on cosets of p^N Z_p^n.
struct Resolution {
  long M = 0;
  long N = 0;
  bool operator==(const Resolution&) const = default;
};

/// A Schwartz–Bruhat function on Q_p^n: a finite sum of weighted indicators of pairwise
/// disjoint balls. Instances are always normalized: balls disjoint, canonical, sorted, with
/// nonzero coefficients, and no complete sibling family sharing one coefficient (so the
/// representation of a function is unique).
template <class C>
class SBFunction {
 public:
  using Term = std::pair<Ball, C>;

  SBFunction(long p, int n);
  /// Normalizes an arbitrary (possibly overlapping) weighted list of balls.
  static SBFunction fromRaw(long p, int n, std::vector<Term> raw);
  static SBFunction indicator(const Ball& b, const C& coefficient = CoefOps<C>::fromRational(1));

  long p() const { return p_; }
  int dimension() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  C evaluate(std::span<const Rational> x) const;
  /// ∫ Φ dx with vol(Z_p^n) = 1.
  C integrate() const;
  /// ∫ |Φ|² dx.
  C normSquared() const;
  /// The smallest resolution at which the function is exactly representable.
  Resolution resolution() const;

  SBFunction operator+(const SBFunction& o) const;
  SBFunction operator-(const SBFunction& o) const;
  SBFunction scaled(const C& c) const;
  /// x ↦ Φ(x − shift).
  SBFunction translated(std::span<const Rational> shift) const;
  /// Same function with every ball split down to at least the given level (not normalized).
  std::vector<Term> refinedTo(long level) const;

  bool operator==(const SBFunction& o) const;

 private:
  long p_;
  int n_;
  std::vector<Term> terms_;
};

using ExactSB = SBFunction<Cyclo>;
using ComplexSB = SBFunction<Complex>;

ComplexSB toComplexSB(const ExactSB& f);

/// Rewrites a normalized function as an equivalent nested list (balls may contain each other,
/// values add along the chain) by hoisting the majority coefficient of each sibling family to
/// its parent. Radial and shell-structured functions shrink to O(levels) balls.
template <class C>
std::vector<typename SBFunction<C>::Term> compress(const SBFunction<C>& f);

/// F(Φ)(ξ) = ∫ Ψ(−[x, ξ]) Φ(x) dx, per ball:
/// F(1_{a + p^e Z^n}) = p^{-en} Ψ(−[a, ξ]) 1_{p^{-e} Z^n}.
template <class C>
SBFunction<C> fourier(const SBFunction<C>& f);
/// Inverse transform with kernel Ψ(+[x, ξ]).
template <class C>
SBFunction<C> inverseFourier(const SBFunction<C>& f);
/// Transform of an arbitrary (possibly overlapping) weighted ball list; sign −1 forward.
template <class C>
SBFunction<C> fourierOfRaw(long p, int n, const std::vector<typename SBFunction<C>::Term>& raw,
                           int sign);

}  // namespace padicfs
