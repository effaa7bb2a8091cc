#include "padicfs/padic.hpp"

#include <string>

namespace padicfs {

bool isPrime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeContext::PrimeContext(long p, int defaultDepth, double tolerance)
    : p_(p), defaultDepth_(defaultDepth), tolerance_(tolerance) {
  if (!isPrime(p)) throw Error("p = " + std::to_string(p) + " is not prime");
  if (defaultDepth <= 0) throw Error("default recursion depth must be positive");
}

Valuation valuation(long p, const Integer& n) {
  if (n == 0) return std::nullopt;
  Integer m = n;
  long v = 0;
  Integer pz(p);
  while (mpz_divisible_p(m.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
    ++v;
  }
  return v;
}

Valuation valuation(long p, const Rational& r) {
  if (r == 0) return std::nullopt;
  return *valuation(p, r.get_num()) - *valuation(p, r.get_den());
}

Rational absP(long p, const Rational& r) {
  auto v = valuation(p, r);
  if (!v) return Rational(0);
  return powP(p, -*v);
}

Integer invMod(const Integer& a, const Integer& m) {
  Integer inv;
  Integer reduced = a % m;
  if (reduced < 0) reduced += m;
  if (mpz_invert(inv.get_mpz_t(), reduced.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error("element is not invertible modulo " + m.get_str());
  }
  return inv;
}

Integer angularComponent(long p, const Rational& r, unsigned k) {
  auto v = valuation(p, r);
  if (!v) throw Error("angular component undefined at zero");
  Rational unit = r * powP(p, -*v);
  Integer mod = ipow(p, k);
  Integer num = unit.get_num() % mod;
  if (num < 0) num += mod;
  Integer result = (num * invMod(unit.get_den(), mod)) % mod;
  return result;
}

Rational reduceModPower(long p, const Rational& input, long e) {
  Rational r = input;
  r.canonicalize();
  auto v = valuation(p, r);
  if (!v || *v >= e) return Rational(0);
  long k = *v < 0 ? -*v : 0;
  // r·p^k is a p-adic integer u/w with w a unit; reduce it modulo p^{e+k}.
  Rational scaled = r * powP(p, k);
  Integer mod = ipow(p, static_cast<unsigned long>(e + k));
  Integer num = scaled.get_num() % mod;
  if (num < 0) num += mod;
  Integer residue = (num * invMod(scaled.get_den(), mod)) % mod;
  Rational x(residue, ipow(p, static_cast<unsigned long>(k)));
  x.canonicalize();
  return x;
}

Rational fracP(long p, const Rational& r) { return reduceModPower(p, r, 0); }

}  // namespace padicfs
