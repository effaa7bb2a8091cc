#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicfs/grid.hpp"
#include "padicfs/operator.hpp"
#include "padicfs/ratfunc.hpp"
#include "padicfs/zeta.hpp"

namespace padicfs {

class UncertifiedError : public Error {
 public:
  UncertifiedError(const std::string& what, std::vector<UndecidedBall> balls)
      : Error(what), undecided(std::move(balls)) {}
  std::vector<UndecidedBall> undecided;
};

/// ⟨T, Φ⟩: exact value (rational β, exact Φ) and its numeric render.
struct PairingValue {
  std::optional<LambdaPoly> exact;
  Complex value;
  /// Order of the pole of the zeta function at s = −β (0 when regular).
  int poleOrder = 0;
  /// Set on the numeric path when −β lies within 1e-6 of a pole line.
  std::string warning;
};

/// Constant Laurent term at s = −β of zetaOf(f, χ, Φ).
PairingValue pairT(const SymbolSpec& sym, const ExactSB& phi, int depth = kDefaultZetaDepth);
PairingValue pairT(const SymbolSpec& sym, const ComplexSB& phi, int depth = kDefaultZetaDepth);

/// ⟨E, Φ⟩ = ⟨T, F⁻¹Φ⟩.
PairingValue pairE(const SymbolSpec& sym, const ExactSB& phi, int depth = kDefaultZetaDepth);
PairingValue pairE(const SymbolSpec& sym, const ComplexSB& phi, int depth = kDefaultZetaDepth);

/// Samples of u = E∗g on the window grid: support p^{-M}Z^n, cells p^N Z^n (u evaluated at the
/// cell representatives). For a twisted symbol E inverts χ(ac f)|f|^β, so the pairing uses
/// the conjugate twist.
template <class C>
GridFunction solve(const SymbolSpec& sym, const SBFunction<C>& g, Resolution window,
                   int depth = kDefaultZetaDepth);

/// u restricted to p^{-M}Z^n as a Schwartz–Bruhat function (its Fourier transform is the
/// level-M cell average of T·ĝ).
template <class C>
ComplexSB solveOnWindow(const SymbolSpec& sym, const SBFunction<C>& g, long M,
                        int depth = kDefaultZetaDepth);

/// Which character the division check pairs with a χ-twisted T.
enum class TwistConvention {
  /// χ̄(ac f)|f|^β paired against T_χ: the characters cancel.
  Compensated,
  /// χ(ac f)|f|^β paired against T_χ.
  Literal,
};

struct DivisionReport {
  bool ok = false;
  /// lim_{s' → 0} of the product-twisted zeta of Φ at s', exactly.
  AlgNum left;
  /// ∫Φ.
  Cyclo right;
  Complex leftValue;
  Complex rightValue;
  /// Pole order of zetaOf(f, χ, Φ) at s = −β, removed by the division.
  int removedPoles = 0;
  std::string detail;
};

/// Checks |f|^β·T = 1 on Φ through lim_{s→−β}⟨χ'(ac f)|f|^{s+β}, Φ⟩ = ∫Φ, exactly.
DivisionReport verifyDivision(const SymbolSpec& sym, const ExactSB& phi,
                              TwistConvention convention = TwistConvention::Compensated,
                              int depth = kDefaultZetaDepth);

}  // namespace padicfs
