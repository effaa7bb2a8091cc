#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicfs/cyclotomic.hpp"

namespace padicfs {

/// An element of Q(ζ_m)(r), r = p^{1/D} > 0, written Σ_j c_j r^j with c_j ∈ Q(ζ_m).
///
/// The representation is canonical: when D is even and √p already lies in Q(ζ_m)
/// (p ≡ 1 mod 4 with p | m, p ≡ 3 mod 4 with 4p | m, or p = 2 with 8 | m) the powers r^j with
/// j ≥ D/2 are folded back through r^{D/2} = √p, so the remaining powers form a basis and
/// equality is coefficientwise.
class AlgNum {
 public:
  AlgNum() = default;
  AlgNum(long p, const Cyclo& c);  // NOLINT(google-explicit-constructor)

  /// p^q for a rational exponent q, exactly.
  static AlgNum pPower(long p, const Rational& q);

  long p() const { return p_; }
  long radicalDegree() const { return static_cast<long>(c_.size()); }
  const std::vector<Cyclo>& coefficients() const { return c_; }

  bool isZero() const;
  /// True when the value is in Q(ζ_m) (no radical part).
  bool isCyclotomic() const;
  Cyclo cyclotomicValue() const;

  std::complex<double> toComplex() const;

  /// Multiplicative inverse; supported when every coefficient is rational.
  AlgNum inverse() const;

  AlgNum& operator+=(const AlgNum& o);
  AlgNum& operator-=(const AlgNum& o);
  AlgNum& operator*=(const AlgNum& o);
  friend AlgNum operator+(AlgNum a, const AlgNum& b) { return a += b; }
  friend AlgNum operator-(AlgNum a, const AlgNum& b) { return a -= b; }
  friend AlgNum operator*(AlgNum a, const AlgNum& b) { return a *= b; }
  AlgNum operator-() const;
  friend bool operator==(const AlgNum& a, const AlgNum& b) { return (a - b).isZero(); }

  /// e.g. "1/2 + (3)*p^(1/2)".
  std::string toString() const;

 private:
  AlgNum(long p, std::vector<Cyclo> c);
  AlgNum withRadicalDegree(long D) const;
  void canonicalize();

  long p_ = 0;  // 0 marks the untyped zero produced by default construction
  std::vector<Cyclo> c_{Cyclo()};
};

/// √p as an element of Q(ζ_m) when it lies there (see AlgNum); nullopt otherwise.
std::optional<Cyclo> sqrtPInCyclotomic(long p, long m);

/// Finite Laurent polynomial Σ_k a_k Λ^k in a formal symbol Λ (standing for ln p) with
/// AlgNum coefficients.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  LambdaPoly(const AlgNum& c);  // NOLINT(google-explicit-constructor)
  static LambdaPoly monomial(const AlgNum& c, int power);

  const std::map<int, AlgNum>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  /// True when only the Λ^0 term is present (or zero).
  bool isConstant() const;
  AlgNum constantTerm() const;

  /// Numeric value at Λ = ln p.
  std::complex<double> render(long p) const;

  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o);
  LambdaPoly& operator*=(const LambdaPoly& o);
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const LambdaPoly& b) { return a *= b; }
  LambdaPoly operator-() const;
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return (a - b).isZero(); }

  std::string toString() const;

 private:
  void prune();
  std::map<int, AlgNum> terms_;
};

}  // namespace padicfs
