#include "padicfs/character.hpp"

#include <numeric>

#include "padicfs/padic.hpp"

namespace padicfs {

long primitiveRoot(long p) {
  if (p == 2) return 1;
  std::vector<long> factors;
  long n = p - 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  auto powMod = [p](long b, long e) {
    long r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : factors) {
      if (powMod(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error("no primitive root found");
}

MultCharacter::MultCharacter(long p) : p_(p), d_(1), exponents_(static_cast<std::size_t>(p - 1), 0) {
  if (!isPrime(p)) throw Error("character modulus must be prime");
}

MultCharacter::MultCharacter(long p, long d, long g) : p_(p), d_(d) {
  if (!isPrime(p)) throw Error("character modulus must be prime");
  if (d < 1 || (p - 1) % d != 0) throw Error("character order must divide p - 1");
  if (std::gcd(((g % d) + d) % d, d) != 1 && d != 1) {
    throw Error("generator image index must be coprime to the order");
  }
  exponents_.assign(static_cast<std::size_t>(p - 1), 0);
  const long gamma = primitiveRoot(p);
  long u = 1;
  for (long k = 0; k < p - 1; ++k) {
    exponents_[u - 1] = ((k * g) % d + d) % d;
    u = u * gamma % p;
  }
}

MultCharacter::MultCharacter(long p, long d, std::vector<long> exponents)
    : p_(p), d_(d), exponents_(std::move(exponents)) {}

MultCharacter MultCharacter::quadratic(long p) {
  if (p == 2) throw Error("no quadratic character of conductor 1 exists for p = 2");
  return MultCharacter(p, 2, 1);
}

long MultCharacter::order() const {
  long g = d_;
  for (long e : exponents_) g = std::gcd(g, e);
  return d_ / g;
}

bool MultCharacter::isTrivial() const { return order() == 1; }

long MultCharacter::exponent(long unitResidue) const {
  long u = ((unitResidue % p_) + p_) % p_;
  if (u == 0) throw Error("character exponent requested at a non-unit");
  return exponents_[u - 1];
}

Cyclo MultCharacter::value(long unitResidue) const {
  long e = exponent(unitResidue);
  if (e == 0) return Cyclo(1);
  return Cyclo::root(d_, e);
}

Cyclo MultCharacter::ofAngular(const Rational& z) const {
  if (z == 0) return Cyclo(0);
  return value(angularComponent(p_, z, 1).get_si());
}

MultCharacter MultCharacter::conj() const {
  std::vector<long> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (d_ - exponents_[i]) % d_;
  return MultCharacter(p_, d_, std::move(e));
}

MultCharacter MultCharacter::operator*(const MultCharacter& other) const {
  if (other.p_ != p_) throw Error("characters of different primes");
  const long L = std::lcm(d_, other.d_);
  std::vector<long> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = (exponents_[i] * (L / d_) + other.exponents_[i] * (L / other.d_)) % L;
  }
  return MultCharacter(p_, L, std::move(e));
}

bool MultCharacter::operator==(const MultCharacter& other) const {
  return key() == other.key();
}

std::string MultCharacter::key() const {
  // Reduce to the exact order so equal characters share a key.
  const long ord = order();
  const long scale = d_ / ord;
  std::string out = std::to_string(ord) + ":";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(exponents_[i] / scale);
  }
  return out;
}

}  // namespace padicfs
