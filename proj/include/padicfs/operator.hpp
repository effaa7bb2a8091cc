#pragma once

#include <optional>

#include "padicfs/character.hpp"
#include "padicfs/polynomial.hpp"
#include "padicfs/sb_function.hpp"

namespace padicfs {

/// Symbol χ(ac f(ξ))·|f(ξ)|^β. β is the exact rational `beta` unless `numericBeta` is set.
struct SymbolSpec {
  Polynomial f;
  Rational beta{1};
  std::optional<Complex> numericBeta;
  std::optional<MultCharacter> chi;

  bool hasExactBeta() const { return !numericBeta; }
  Complex betaValue() const { return numericBeta ? *numericBeta : Complex(toDouble(beta), 0.0); }
  /// Throws unless Re(β) > 0.
  void validate() const;
};

struct ApplyReport {
  ComplexSB result;
  /// Set when every multiplier value lies in Q(ζ) (exact certificates, integral exponents).
  std::optional<ExactSB> exactResult;
  /// Piecewise-constant symbol actually applied on the Fourier side.
  ComplexSB multiplier;
  bool exact = true;
  /// Bound on ‖computed − true‖_{L²}.
  double l2ErrorBound = 0.0;
};

/// F⁻¹(symbol · FΦ). Fourier-side balls are refined until the unit-ball certificate holds or
/// their level reaches `depth`; the rest use the exact ball average of the symbol from the zeta
/// engine. The cells depend only on the symbol and `depth`, so translation commutes exactly.
template <class C>
ApplyReport applyOperator(const SymbolSpec& sym, const SBFunction<C>& phi, int depth);

/// |ξ|^α on Q_p: exact shells around 0 down to level `depth`, exact average on the core.
template <class C>
ApplyReport applyVladimirov(const Rational& alpha, const SBFunction<C>& phi, int depth);
template <class C>
ApplyReport applyVladimirov(Complex alpha, const SBFunction<C>& phi, int depth);

}  // namespace padicfs
