#include "padicfs/polynomial.hpp"

#include <numeric>
#include <stdexcept>

#include "padicfs/padic.hpp"

namespace padicfs {

namespace {

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational power(const Rational& base, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw Error("polynomial dimension must be positive");
}

Polynomial::Polynomial(int n, Terms terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw Error("polynomial dimension must be positive");
  for (const auto& [alpha, c] : terms_) {
    if (static_cast<int>(alpha.size()) != n) throw Error("multi-index dimension mismatch");
    for (int a : alpha) {
      if (a < 0) throw Error("negative exponent in polynomial");
    }
  }
  prune();
}

Polynomial Polynomial::constant(int n, const Rational& c) {
  return Polynomial(n, {{MultiIndex(n, 0), c}});
}

Polynomial Polynomial::variable(int n, int index) {
  MultiIndex alpha(n, 0);
  alpha.at(index) = 1;
  return Polynomial(n, {{alpha, Rational(1)}});
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

bool Polynomial::isConstant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && totalDegree() == 0);
}

int Polynomial::totalDegree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) {
    d = std::max(d, std::accumulate(alpha.begin(), alpha.end(), 0));
  }
  return d;
}

std::optional<int> Polynomial::homogeneousDegree() const {
  std::optional<int> degree;
  for (const auto& [alpha, c] : terms_) {
    int d = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != n_) throw Error("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i) term *= power(point[i], alpha[i]);
    sum += term;
  }
  return sum;
}

Polynomial::Terms Polynomial::hasseTaylor(std::span<const Rational> a) const {
  if (static_cast<int>(a.size()) != n_) throw Error("expansion point has wrong dimension");
  Terms out;
  for (const auto& [gamma, c] : terms_) {
    // Each monomial c·Π (a_i + h_i)^{γ_i} contributes to every α ≤ γ.
    std::vector<std::vector<Rational>> perVariable(n_);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k <= gamma[i]; ++k) {
        perVariable[i].push_back(Rational(binomial(gamma[i], k)) * power(a[i], gamma[i] - k));
      }
    }
    MultiIndex alpha(n_, 0);
    while (true) {
      Rational term = c;
      for (int i = 0; i < n_ && term != 0; ++i) term *= perVariable[i][alpha[i]];
      if (term != 0) out[alpha] += term;
      int i = n_ - 1;
      while (i >= 0 && alpha[i] == gamma[i]) {
        alpha[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++alpha[i];
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

Polynomial Polynomial::partial(int index) const {
  Terms out;
  for (const auto& [alpha, c] : terms_) {
    if (alpha.at(index) == 0) continue;
    MultiIndex beta = alpha;
    --beta[index];
    out[beta] += c * alpha[index];
  }
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.n_ != n_) throw Error("dimension mismatch in polynomial sum");
  Terms out = terms_;
  for (const auto& [alpha, c] : other.terms_) out[alpha] += c;
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.n_ != n_) throw Error("dimension mismatch in polynomial product");
  Terms out;
  for (const auto& [a, c] : terms_) {
    for (const auto& [b, d] : other.terms_) {
      MultiIndex sum(n_);
      for (int i = 0; i < n_; ++i) sum[i] = a[i] + b[i];
      out[sum] += c * d;
    }
  }
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Terms out;
  for (const auto& [alpha, v] : terms_) out[alpha] = v * c;
  return Polynomial(n_, std::move(out));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(n_, Rational(1));
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::string Polynomial::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first, then reverse-lexicographic exponents, reads naturally.
  std::vector<std::pair<MultiIndex, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    int dl = std::accumulate(l.first.begin(), l.first.end(), 0);
    int dr = std::accumulate(r.first.begin(), r.first.end(), 0);
    if (dl != dr) return dl > dr;
    return l.first > r.first;
  });
  bool first = true;
  for (const auto& [alpha, c] : ordered) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string monomial;
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += "x" + std::to_string(i + 1);
      if (alpha[i] > 1) monomial += "^" + std::to_string(alpha[i]);
    }
    if (monomial.empty()) {
      out += padicfs::toString(magnitude);
    } else if (magnitude == 1) {
      out += monomial;
    } else {
      out += padicfs::toString(magnitude) + "*" + monomial;
    }
  }
  return out;
}

}  // namespace padicfs
