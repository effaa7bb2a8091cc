#include "padicfs/algebraic.hpp"

#include <cmath>
#include <sstream>

#include "padicfs/padic.hpp"

namespace padicfs {

namespace {

long legendre(long a, long p) {
  long result = 1;
  long base = a % p;
  long e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Polynomial remainder over Q.
QPoly polyMod(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational coef = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
    trim(a);
  }
  return a;
}

QPoly polyMul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly polySub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::pair<QPoly, QPoly> polyDivMod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational coef = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = coef;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

}  // namespace

std::optional<Cyclo> sqrtPInCyclotomic(long p, long m) {
  if (p == 2) {
    if (m % 8 != 0) return std::nullopt;
    return Cyclo::root(8, 1) + Cyclo::root(8, 7);
  }
  const bool oneMod4 = p % 4 == 1;
  if (oneMod4 ? m % p != 0 : m % (4 * p) != 0) return std::nullopt;
  // Quadratic Gauss sum: g² = (−1)^{(p−1)/2} p, g = √p or i√p for ζ_p = e^{2πi/p}.
  Cyclo gauss;
  for (long a = 1; a < p; ++a) gauss += Cyclo(legendre(a, p)) * Cyclo::root(p, a);
  if (oneMod4) return gauss;
  return -(Cyclo::root(4, 1) * gauss);
}

AlgNum::AlgNum(long p, const Cyclo& c) : p_(p), c_{c} {}

AlgNum::AlgNum(long p, std::vector<Cyclo> c) : p_(p), c_(std::move(c)) { canonicalize(); }

AlgNum AlgNum::pPower(long p, const Rational& q) {
  Rational e = q;
  e.canonicalize();
  const long D = e.get_den().get_si();
  Integer num = e.get_num();
  Integer k;
  Integer j;
  mpz_fdiv_qr_ui(k.get_mpz_t(), j.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(D));
  std::vector<Cyclo> c(static_cast<std::size_t>(D), Cyclo());
  c[j.get_si()] = Cyclo(powP(p, k.get_si()));
  return AlgNum(p, std::move(c));
}

void AlgNum::canonicalize() {
  long m = 1;
  for (const auto& x : c_) m = lcmLong(m, x.order());
  for (auto& x : c_) {
    if (x.order() != m) x = x.liftedTo(m);
  }
  const std::size_t D = c_.size();
  if (D % 2 == 0 && p_ != 0) {
    if (auto s = sqrtPInCyclotomic(p_, m)) {
      for (std::size_t j = D / 2; j < D; ++j) {
        if (c_[j].isZero()) continue;
        c_[j - D / 2] += c_[j] * *s;
        c_[j] = Cyclo();
      }
    }
  }
}

AlgNum AlgNum::withRadicalDegree(long L) const {
  const long D = radicalDegree();
  if (L == D) return *this;
  if (L % D != 0) throw Error("radical degree mismatch");
  std::vector<Cyclo> c(static_cast<std::size_t>(L), Cyclo());
  const long stride = L / D;
  for (long j = 0; j < D; ++j) c[j * stride] = c_[j];
  return AlgNum(p_, std::move(c));
}

bool AlgNum::isZero() const {
  for (const auto& x : c_) {
    if (!x.isZero()) return false;
  }
  return true;
}

bool AlgNum::isCyclotomic() const {
  for (std::size_t j = 1; j < c_.size(); ++j) {
    if (!c_[j].isZero()) return false;
  }
  return true;
}

Cyclo AlgNum::cyclotomicValue() const {
  if (!isCyclotomic()) throw Error("value has a radical part: " + toString());
  return c_[0];
}

std::complex<double> AlgNum::toComplex() const {
  if (c_.size() == 1) return c_[0].toComplex();
  const double r = std::pow(static_cast<double>(p_), 1.0 / static_cast<double>(c_.size()));
  std::complex<double> z(0.0, 0.0);
  double rj = 1.0;
  for (const auto& x : c_) {
    z += x.toComplex() * rj;
    rj *= r;
  }
  return z;
}

AlgNum AlgNum::inverse() const {
  if (isZero()) throw Error("division by zero in Q(ζ)(p^{1/D})");
  if (c_.size() == 1) {
    if (!c_[0].isRational()) throw Error("inverse of a non-rational cyclotomic number");
    return AlgNum(p_, Cyclo(Rational(1) / c_[0].rationalValue()));
  }
  QPoly a;
  for (const auto& x : c_) {
    if (!x.isRational()) throw Error("inverse supported only for rational radical coefficients");
    a.push_back(x.rationalValue());
  }
  trim(a);
  QPoly modulus(c_.size() + 1, Rational(0));
  modulus[0] = -p_;
  modulus.back() = 1;
  // Extended Euclid: find u with u·a ≡ 1 mod (x^D − p); the modulus is irreducible.
  QPoly r0 = modulus;
  QPoly r1 = a;
  QPoly s0;
  QPoly s1{Rational(1)};
  while (!(r1.size() == 1)) {
    if (r1.empty()) throw Error("element is not invertible");
    auto [q, r] = polyDivMod(r0, r1);
    QPoly s = polySub(s0, polyMul(q, s1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  QPoly u = polyMod(s1, modulus);
  for (auto& x : u) x /= r1[0];
  std::vector<Cyclo> c(c_.size(), Cyclo());
  for (std::size_t j = 0; j < u.size(); ++j) c[j] = Cyclo(u[j]);
  return AlgNum(p_, std::move(c));
}

AlgNum& AlgNum::operator+=(const AlgNum& o) {
  if (p_ == 0) p_ = o.p_;
  if (o.p_ != 0 && o.p_ != p_) throw Error("mixing radicals of different primes");
  const long L = lcmLong(radicalDegree(), o.radicalDegree());
  AlgNum lhs = withRadicalDegree(L);
  AlgNum rhs = o.withRadicalDegree(L);
  for (long j = 0; j < L; ++j) lhs.c_[j] += rhs.c_[j];
  lhs.p_ = p_;
  lhs.canonicalize();
  *this = std::move(lhs);
  return *this;
}

AlgNum& AlgNum::operator-=(const AlgNum& o) { return *this += -o; }

AlgNum AlgNum::operator-() const {
  AlgNum r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

AlgNum& AlgNum::operator*=(const AlgNum& o) {
  if (p_ == 0) p_ = o.p_;
  if (o.p_ != 0 && o.p_ != p_) throw Error("mixing radicals of different primes");
  const long L = lcmLong(radicalDegree(), o.radicalDegree());
  AlgNum lhs = withRadicalDegree(L);
  AlgNum rhs = o.withRadicalDegree(L);
  std::vector<Cyclo> prod(static_cast<std::size_t>(L), Cyclo());
  for (long i = 0; i < L; ++i) {
    if (lhs.c_[i].isZero()) continue;
    for (long j = 0; j < L; ++j) {
      if (rhs.c_[j].isZero()) continue;
      Cyclo term = lhs.c_[i] * rhs.c_[j];
      long k = i + j;
      if (k >= L) {
        term *= Cyclo(Rational(p_));
        k -= L;
      }
      prod[k] += term;
    }
  }
  *this = AlgNum(p_, std::move(prod));
  return *this;
}

std::string AlgNum::toString() const {
  std::ostringstream out;
  bool first = true;
  const long D = radicalDegree();
  for (long j = 0; j < D; ++j) {
    if (c_[j].isZero()) continue;
    if (!first) out << " + ";
    first = false;
    if (j == 0) {
      out << c_[j].toString();
    } else {
      Rational e(j, D);
      e.canonicalize();
      out << "(" << c_[j].toString() << ")*" << p_ << "^(" << padicfs::toString(e) << ")";
    }
  }
  return first ? "0" : out.str();
}

LambdaPoly::LambdaPoly(const AlgNum& c) {
  if (!c.isZero()) terms_.emplace(0, c);
}

LambdaPoly LambdaPoly::monomial(const AlgNum& c, int power) {
  LambdaPoly r;
  if (!c.isZero()) r.terms_.emplace(power, c);
  return r;
}

void LambdaPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.isZero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

bool LambdaPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

AlgNum LambdaPoly::constantTerm() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? AlgNum() : it->second;
}

std::complex<double> LambdaPoly::render(long p) const {
  const double lambda = std::log(static_cast<double>(p));
  std::complex<double> z(0.0, 0.0);
  for (const auto& [k, c] : terms_) z += c.toComplex() * std::pow(lambda, k);
  return z;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
    }
  }
  prune();
  return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) { return *this += -o; }

LambdaPoly LambdaPoly::operator-() const {
  LambdaPoly r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

LambdaPoly& LambdaPoly::operator*=(const LambdaPoly& o) {
  std::map<int, AlgNum> out;
  for (const auto& [i, a] : terms_) {
    for (const auto& [j, b] : o.terms_) {
      auto [it, inserted] = out.try_emplace(i + j, a * b);
      if (!inserted) it->second += a * b;
    }
  }
  terms_ = std::move(out);
  prune();
  return *this;
}

std::string LambdaPoly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "[" << c.toString() << "]";
    if (k != 0) out << "*L^" << k;
  }
  return out.str();
}

}  // namespace padicfs
