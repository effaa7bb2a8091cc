#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "padicfs/algebraic.hpp"
#include "padicfs/padic.hpp"
#include "padicfs/sb_function.hpp"

namespace padicfs {

/// The factor 1 − p^{-a} t^b, t = p^{-s}. It vanishes on Re(s) = −a/b.
struct DenFactor {
  long a = 1;
  long b = 1;
  auto operator<=>(const DenFactor&) const = default;
  std::string toString(long p) const;
};

class PoleError : public Error {
 public:
  PoleError(const DenFactor& f, const std::string& what) : Error(what), factor(f) {}
  DenFactor factor;
};

/// N(t) / Π (1 − p^{-a} t^b)^{mult}, with N a Laurent polynomial in t. Denominators stay
/// factored; the representation is not reduced.
template <class C>
class RatFuncT {
 public:
  using Numerator = std::map<long, C>;
  using Denominator = std::map<DenFactor, int>;

  explicit RatFuncT(long p) : p_(p) {}
  RatFuncT(long p, Numerator num, Denominator den = {});
  static RatFuncT monomial(long p, const C& c, long k);

  long p() const { return p_; }
  const Numerator& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }
  bool isZero() const { return num_.empty(); }

  RatFuncT operator+(const RatFuncT& o) const;
  RatFuncT operator-(const RatFuncT& o) const;
  RatFuncT operator*(const RatFuncT& o) const;
  RatFuncT scaled(const C& c) const;
  /// Multiplies by c·t^k.
  RatFuncT scaleMonomial(const C& c, long k) const;
  /// Divides by (1 − p^{-a} t^b).
  RatFuncT dividedBy(const DenFactor& f) const;

  /// Value at complex s; throws PoleError when a denominator factor vanishes (to 1e-12).
  Complex evaluate(Complex s) const;

  std::string toString() const;

 private:
  long p_;
  Numerator num_;
  Denominator den_;
};

using RatFunc = RatFuncT<Cyclo>;
using ComplexRatFunc = RatFuncT<Complex>;

ComplexRatFunc toComplexRatFunc(const RatFunc& r);

template <class C>
Complex evaluateRatFunc(const RatFuncT<C>& r, Complex s) {
  return r.evaluate(s);
}
/// Rational s: the pole test is exact (a + b·s = 0).
template <class C>
Complex evaluateRatFunc(const RatFuncT<C>& r, const Rational& s);

/// Exact equality after cross-multiplying the expanded denominators.
bool operator==(const RatFunc& x, const RatFunc& y);

/// Removes every denominator factor that divides the numerator exactly.
RatFunc cancelled(const RatFunc& r);

struct PoleInfo {
  Rational realPart;  // −a/b
  DenFactor factor;
  int multiplicity;  // after removing the factors that cancel against the numerator
};

/// Poles by real part; factors that cancel completely against the numerator are omitted.
std::vector<PoleInfo> polesOf(const RatFunc& r);

/// Σ_{m ≥ order} c_m w^m around s = −β, w = s + β, with c_m a Laurent polynomial in Λ = ln p.
struct LaurentSeries {
  long p = 0;
  Rational beta;
  int order = 0;
  std::vector<LambdaPoly> coefficients;  // c_order, …, c_J

  int highest() const { return order + static_cast<int>(coefficients.size()) - 1; }
  /// c_m (zero outside the computed range above order).
  LambdaPoly coefficient(int m) const;
  Complex render(int m) const { return coefficient(m).render(p); }
};

/// Expansion of r at s = −β through w^J, exactly. The numerator must be nonzero or the result
/// is the zero series with order 0.
LaurentSeries laurentExpand(const RatFunc& r, const Rational& beta, int J);

}  // namespace padicfs
