#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicfs/ball.hpp"
#include "padicfs/character.hpp"
#include "padicfs/polynomial.hpp"
#include "padicfs/ratfunc.hpp"
#include "padicfs/sb_function.hpp"

namespace padicfs {

inline constexpr int kDefaultZetaDepth = 40;

/// |f| ≡ p^{-v} on the ball; angularConstant when moreover f/f(a) ∈ 1 + pZ_p there.
struct UnitCertificate {
  long v;
  bool angularConstant;
};

/// Simple zero in direction x_i (1-based) with v(∂_i f(a)) = d.
struct SmoothZeroCertificate {
  int i;
  long d;
};

std::optional<UnitCertificate> certifyUnitBall(const Polynomial& f, const Ball& b,
                                               bool needAngular = false);
std::optional<SmoothZeroCertificate> certifySmoothZero(const Polynomial& f, const Ball& b);

/// Upper bound for |f| on the ball from the Taylor coefficients at its center.
double supBound(const Polynomial& f, const Ball& b);

struct UndecidedBall {
  Ball ball;
  double supBound;
};

template <class C>
struct ZetaResultT {
  RatFuncT<C> value;
  bool certified = true;
  std::vector<UndecidedBall> undecided;
};

using ZetaResult = ZetaResultT<Cyclo>;

/// ∫_B χ(ac f)|f|^s dx as a rational function of t = p^{-s}. A trivial χ is the same as none.
ZetaResult zetaBall(const Polynomial& f, const std::optional<MultCharacter>& chi, const Ball& b,
                    int depth = kDefaultZetaDepth);

/// Σ_i c_i · zetaBall(f, χ, B_i) over the balls of Φ.
template <class C>
ZetaResultT<C> zetaOf(const Polynomial& f, const std::optional<MultCharacter>& chi,
                      const SBFunction<C>& phi, int depth = kDefaultZetaDepth);

/// Closed disc {z : |z − center| ≤ radius} containing ⟨χ(ac f)|f|^{s0}, Φ⟩.
struct ZetaBracket {
  Complex center;
  double radius = 0.0;
  double width() const { return 2.0 * radius; }
  bool contains(Complex z, double slack = 1e-12) const {
    return std::abs(z - center) <= radius + slack * std::max(1.0, std::abs(center));
  }
};

/// Direct numeric integration: unit balls exactly, smooth zeros by their radial shells down to
/// D levels below the ball, everything left over bounded by volume × sup|f|^{Re s0}.
template <class C>
ZetaBracket truncatedZeta(const Polynomial& f, const std::optional<MultCharacter>& chi,
                          const SBFunction<C>& phi, Complex s0, int D);

/// Denominator factors emitted by the engine so far, and how many had a < 1 or b < 1.
struct EmissionAudit {
  long factors = 0;
  long violations = 0;
};
EmissionAudit emissionAudit();

/// Persistent second-level cache consulted by zetaBall for its top-level ball.
class ZetaStore {
 public:
  virtual ~ZetaStore() = default;
  virtual std::optional<ZetaResult> load(const std::string& key) = 0;
  virtual void save(const std::string& key, const ZetaResult& result) = 0;
};

/// Installs (or with nullptr removes) the process-wide store.
void setZetaStore(std::shared_ptr<ZetaStore> store);

void clearZetaCache();
std::size_t zetaCacheSize();

}  // namespace padicfs
