#pragma once

#include <string>
#include <vector>

#include "padicfs/cyclotomic.hpp"

namespace padicfs {

/// A multiplicative character of (Z/p)^× lifted to Z_p^× (conductor 1), with χ(0) = 0.
/// Values are d-th roots of unity stored by exponent: χ(u) = ζ_d^{exponent(u)}.
class MultCharacter {
 public:
  /// The trivial character of Z_p^×.
  explicit MultCharacter(long p);
  /// χ(γ) = ζ_d^g for the least primitive root γ mod p. Requires d | p − 1 and gcd(g, d) = 1.
  MultCharacter(long p, long d, long g);

  static MultCharacter quadratic(long p);

  long p() const { return p_; }
  /// Exponent modulus d; values are powers of ζ_d.
  long modulus() const { return d_; }
  /// Exact order of χ in the character group.
  long order() const;
  bool isTrivial() const;
  long exponent(long unitResidue) const;

  /// χ(u mod p) for a unit residue u ∈ [1, p).
  Cyclo value(long unitResidue) const;
  /// χ(ac(z)) for a rational z; 0 when z = 0.
  Cyclo ofAngular(const Rational& z) const;

  MultCharacter conj() const;
  MultCharacter operator*(const MultCharacter& other) const;
  bool operator==(const MultCharacter& other) const;

  /// Stable textual key: "d:e1,e2,…,e_{p−1}".
  std::string key() const;

 private:
  MultCharacter(long p, long d, std::vector<long> exponents);

  long p_;
  long d_;
  std::vector<long> exponents_;  // index u − 1
};

long primitiveRoot(long p);

}  // namespace padicfs
