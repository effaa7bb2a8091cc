#include "padicfs/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "padicfs/padic.hpp"

namespace padicfs {

long eulerPhi(long m) {
  long result = m;
  long n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      result -= result / d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

long lcmLong(long a, long b) { return std::lcm(a, b); }

namespace {

// Exact division of integer polynomials (lowest degree first) by a monic divisor.
std::vector<Integer> divideMonic(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<Integer> q(num.size() - dd, Integer(0));
  for (std::size_t i = num.size() - 1;; --i) {
    Integer coef = num[i];
    q[i - dd] = coef;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= coef * den[j];
    if (i == dd) break;
  }
  return q;
}

}  // namespace

const std::vector<Integer>& cyclotomicPolynomial(long m) {
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<std::vector<Integer>>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return *it->second;

  // Φ_d = (x^d − 1) / Π_{e | d, e < d} Φ_e, filled in for every divisor d of m in order.
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0 || cache.count(d)) continue;
    std::vector<Integer> poly(static_cast<std::size_t>(d) + 1, Integer(0));
    poly[0] = -1;
    poly[d] = 1;
    for (long e = 1; e < d; ++e) {
      if (d % e == 0) poly = divideMonic(poly, *cache.at(e));
    }
    cache.emplace(d, std::make_unique<std::vector<Integer>>(std::move(poly)));
  }
  return *cache.at(m);
}

Cyclo::Cyclo() : m_(1) {}

Cyclo::Cyclo(const Rational& q) : m_(1) {
  if (q != 0) c_.emplace(0, q);
}

Cyclo::Cyclo(long m, std::map<long, Rational> c) : m_(m), c_(std::move(c)) { reduce(); }

void Cyclo::reduce() {
  const auto& phi = cyclotomicPolynomial(m_);
  const long deg = static_cast<long>(phi.size()) - 1;
  // x^j for j ≥ deg: x^j = −Σ_{s<deg} φ_s x^{j−deg+s}; Φ_m is sparse for prime-power m.
  while (!c_.empty() && c_.rbegin()->first >= deg) {
    auto top = std::prev(c_.end());
    const long j = top->first;
    const Rational coef = top->second;
    c_.erase(top);
    if (coef == 0) continue;
    for (long s = 0; s < deg; ++s) {
      if (phi[s] == 0) continue;
      auto [it, inserted] = c_.try_emplace(j - deg + s, Rational(0));
      it->second -= coef * phi[s];
    }
  }
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second == 0) {
      it = c_.erase(it);
    } else {
      ++it;
    }
  }
}

Cyclo Cyclo::root(long m, long k) {
  if (m <= 0) throw Error("root of unity order must be positive");
  k %= m;
  if (k < 0) k += m;
  return Cyclo(m, {{k, Rational(1)}});
}

Cyclo Cyclo::liftedTo(long M) const {
  if (M % m_ != 0) throw Error("cannot lift Q(ζ_m) into Q(ζ_M) when m does not divide M");
  if (M == m_) return *this;
  const long stride = M / m_;
  std::map<long, Rational> c;
  for (const auto& [j, v] : c_) c.emplace(j * stride, v);
  return Cyclo(M, std::move(c));
}

bool Cyclo::isZero() const { return c_.empty(); }

bool Cyclo::isRational() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

Rational Cyclo::rationalValue() const {
  if (!isRational()) throw Error("cyclotomic number is not rational: " + toString());
  return c_.empty() ? Rational(0) : c_.begin()->second;
}

Cyclo Cyclo::conj() const {
  std::map<long, Rational> c;
  for (const auto& [j, v] : c_) c.emplace(j == 0 ? 0 : m_ - j, v);
  return Cyclo(m_, std::move(c));
}

std::complex<double> Cyclo::toComplex() const {
  std::complex<double> z(0.0, 0.0);
  for (const auto& [j, v] : c_) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m_);
    z += toDouble(v) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.c_.empty()) return *this;
  const long M = lcmLong(m_, o.m_);
  if (M != m_) *this = liftedTo(M);
  const Cyclo lifted = o.m_ == M ? Cyclo() : o.liftedTo(M);
  const Cyclo& rhs = o.m_ == M ? o : lifted;
  for (const auto& [j, v] : rhs.c_) {
    auto [it, inserted] = c_.try_emplace(j, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& [j, v] : r.c_) v = -v;
  return r;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (c_.empty()) return *this;
  if (o.c_.empty()) {
    c_.clear();
    return *this;
  }
  if (o.isRational()) {
    const Rational s = o.c_.begin()->second;
    for (auto& [j, v] : c_) v *= s;
    return *this;
  }
  if (isRational()) {
    const Rational s = c_.begin()->second;
    *this = o;
    for (auto& [j, v] : c_) v *= s;
    return *this;
  }
  const long M = lcmLong(m_, o.m_);
  const Cyclo lhs = m_ == M ? *this : liftedTo(M);
  const Cyclo rhs = o.m_ == M ? o : o.liftedTo(M);
  std::map<long, Rational> prod;
  for (const auto& [i, a] : lhs.c_) {
    for (const auto& [j, b] : rhs.c_) {
      auto [it, inserted] = prod.try_emplace(i + j, a * b);
      if (!inserted) it->second += a * b;
    }
  }
  *this = Cyclo(M, std::move(prod));
  return *this;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.m_ == b.m_) return a.c_ == b.c_;
  return (a - b).isZero();
}

std::string Cyclo::toString() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [j, v] : c_) {
    if (!first) out << " + ";
    first = false;
    out << padicfs::toString(v);
    if (j > 0) out << "*z" << m_ << "^" << j;
  }
  if (first) return "0";
  return out.str();
}

Cyclo Cyclo::parse(const std::string& text) {
  Cyclo result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(" + ", pos);
    std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? text.size() : next + 3;
    auto star = term.find("*z");
    if (star == std::string::npos) {
      result += Cyclo(parseRational(term));
      continue;
    }
    auto caret = term.find('^', star);
    if (caret == std::string::npos) throw Error("malformed cyclotomic term '" + term + "'");
    long m = std::stol(term.substr(star + 2, caret - star - 2));
    long k = std::stol(term.substr(caret + 1));
    result += Cyclo(parseRational(term.substr(0, star))) * root(m, k);
  }
  return result;
}

}  // namespace padicfs
