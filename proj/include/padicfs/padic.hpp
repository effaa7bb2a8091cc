#pragma once

#include <optional>
#include <stdexcept>

#include "padicfs/rational.hpp"

namespace padicfs {

/// Base error for every failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The prime p together with run-wide defaults. K is fixed to Q_p, so q = p and the
/// uniformizer is p itself.
class PrimeContext {
 public:
  explicit PrimeContext(long p, int defaultDepth = 40, double tolerance = 1e-10);

  long p() const { return p_; }
  int defaultDepth() const { return defaultDepth_; }
  double tolerance() const { return tolerance_; }

 private:
  long p_;
  int defaultDepth_;
  double tolerance_;
};

bool isPrime(long n);

/// Valuation in Z ∪ {+∞}; +∞ is encoded as std::nullopt.
using Valuation = std::optional<long>;

Valuation valuation(long p, const Integer& n);
Valuation valuation(long p, const Rational& r);

/// |r|_p = p^{-v(r)}, exactly; 0 for r = 0.
Rational absP(long p, const Rational& r);

/// ac(r) = r·p^{-v(r)} reduced modulo p^k, as an integer in [1, p^k). Throws on r = 0.
Integer angularComponent(long p, const Rational& r, unsigned k = 1);

/// Modular inverse of a unit modulo m.
Integer invMod(const Integer& a, const Integer& m);

/// Canonical representative of r + p^e Z_p: the unique x ∈ Z[1/p] with 0 ≤ x < p^e.
Rational reduceModPower(long p, const Rational& r, long e);

/// p-adic fractional part {r}_p ∈ Z[1/p] ∩ [0, 1), so that r − {r}_p ∈ Z_p.
Rational fracP(long p, const Rational& r);

}  // namespace padicfs
