#include "padicfs/ratfunc.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace padicfs {

namespace {

using RatPoly = std::map<long, Rational>;

RatPoly factorPower(long p, const DenFactor& f, int k) {
  RatPoly result{{0, Rational(1)}};
  const Rational lead = -powP(p, -f.a);
  for (int i = 0; i < k; ++i) {
    RatPoly next;
    for (const auto& [e, c] : result) {
      next[e] += c;
      next[e + f.b] += c * lead;
    }
    result.clear();
    for (auto& [e, c] : next) {
      if (c != 0) result.emplace(e, c);
    }
  }
  return result;
}

template <class C>
void prune(std::map<long, C>& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (CoefOps<C>::isZero(it->second)) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}

template <class C>
std::map<long, C> mulRat(const std::map<long, C>& a, const RatPoly& b) {
  std::map<long, C> out;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      auto [it, inserted] = out.try_emplace(i + j, CoefOps<C>::zero());
      it->second += x * CoefOps<C>::fromRational(y);
    }
  }
  prune(out);
  return out;
}

/// Rewrites the numerator over the denominator `target` (which must dominate r's).
template <class C>
std::map<long, C> numeratorOver(const RatFuncT<C>& r,
                                const typename RatFuncT<C>::Denominator& target) {
  std::map<long, C> num = r.numerator();
  for (const auto& [f, k] : target) {
    auto it = r.denominator().find(f);
    int have = it == r.denominator().end() ? 0 : it->second;
    if (k > have) num = mulRat(num, factorPower(r.p(), f, k - have));
  }
  return num;
}

template <class C>
typename RatFuncT<C>::Denominator commonDenominator(const RatFuncT<C>& x, const RatFuncT<C>& y) {
  typename RatFuncT<C>::Denominator den = x.denominator();
  for (const auto& [f, k] : y.denominator()) {
    int& have = den[f];
    have = std::max(have, k);
  }
  return den;
}

std::string coefString(const Cyclo& c) { return c.toString(); }
std::string coefString(const Complex& c) {
  std::ostringstream out;
  out.precision(17);
  out << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return out.str();
}

}  // namespace

std::string DenFactor::toString(long p) const {
  std::ostringstream out;
  out << "(1 - " << p << "^" << -a << "*t";
  if (b != 1) out << "^" << b;
  out << ")";
  return out.str();
}

template <class C>
RatFuncT<C>::RatFuncT(long p, Numerator num, Denominator den)
    : p_(p), num_(std::move(num)), den_(std::move(den)) {
  prune(num_);
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->first.b <= 0) throw Error("denominator factor needs b ≥ 1");
    if (it->second <= 0) {
      it = den_.erase(it);
    } else {
      ++it;
    }
  }
  if (num_.empty()) den_.clear();
}

template <class C>
RatFuncT<C> RatFuncT<C>::monomial(long p, const C& c, long k) {
  return RatFuncT(p, {{k, c}});
}

template <class C>
RatFuncT<C> RatFuncT<C>::operator+(const RatFuncT& o) const {
  if (o.p_ != p_) throw Error("rational functions over different primes");
  if (o.isZero()) return *this;
  if (isZero()) return o;
  Denominator den = commonDenominator(*this, o);
  Numerator a = numeratorOver(*this, den);
  for (const auto& [e, c] : numeratorOver(o, den)) {
    auto [it, inserted] = a.try_emplace(e, c);
    if (!inserted) it->second += c;
  }
  return RatFuncT(p_, std::move(a), std::move(den));
}

template <class C>
RatFuncT<C> RatFuncT<C>::operator-(const RatFuncT& o) const {
  return *this + o.scaled(CoefOps<C>::fromRational(-1));
}

template <class C>
RatFuncT<C> RatFuncT<C>::operator*(const RatFuncT& o) const {
  if (o.p_ != p_) throw Error("rational functions over different primes");
  Numerator num;
  for (const auto& [i, x] : num_) {
    for (const auto& [j, y] : o.num_) {
      auto [it, inserted] = num.try_emplace(i + j, CoefOps<C>::zero());
      it->second += x * y;
    }
  }
  Denominator den = den_;
  for (const auto& [f, k] : o.den_) den[f] += k;
  return RatFuncT(p_, std::move(num), std::move(den));
}

template <class C>
RatFuncT<C> RatFuncT<C>::scaled(const C& c) const {
  return scaleMonomial(c, 0);
}

template <class C>
RatFuncT<C> RatFuncT<C>::scaleMonomial(const C& c, long k) const {
  Numerator num;
  for (const auto& [e, x] : num_) num.emplace(e + k, x * c);
  return RatFuncT(p_, std::move(num), den_);
}

template <class C>
RatFuncT<C> RatFuncT<C>::dividedBy(const DenFactor& f) const {
  Denominator den = den_;
  den[f] += 1;
  return RatFuncT(p_, num_, std::move(den));
}

template <class C>
Complex RatFuncT<C>::evaluate(Complex s) const {
  const double lnp = std::log(static_cast<double>(p_));
  for (const auto& [f, k] : den_) {
    Complex v = 1.0 - std::exp(-(static_cast<double>(f.a) + static_cast<double>(f.b) * s) * lnp);
    if (std::abs(v) < 1e-12) throw PoleError(f, "pole of " + f.toString(p_) + " hit at s");
  }
  Complex num(0.0, 0.0);
  for (const auto& [e, c] : num_) {
    num += CoefOps<C>::toComplex(c) * std::exp(-static_cast<double>(e) * s * lnp);
  }
  Complex den(1.0, 0.0);
  for (const auto& [f, k] : den_) {
    Complex v = 1.0 - std::exp(-(static_cast<double>(f.a) + static_cast<double>(f.b) * s) * lnp);
    den *= std::pow(v, k);
  }
  return num / den;
}

template <class C>
std::string RatFuncT<C>::toString() const {
  std::ostringstream out;
  if (num_.empty()) return "0";
  out << "(";
  bool first = true;
  for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << "(" << coefString(it->second) << ")";
    if (it->first != 0) out << "*t^" << it->first;
  }
  out << ")";
  if (!den_.empty()) {
    out << " / (";
    for (const auto& [f, k] : den_) {
      out << f.toString(p_);
      if (k != 1) out << "^" << k;
    }
    out << ")";
  }
  return out.str();
}

template <class C>
Complex evaluateRatFunc(const RatFuncT<C>& r, const Rational& s) {
  for (const auto& [f, k] : r.denominator()) {
    if (f.a + f.b * s == 0) throw PoleError(f, "pole of " + f.toString(r.p()) + " hit at s = " + toString(s));
  }
  return r.evaluate(Complex(toDouble(s), 0.0));
}

template class RatFuncT<Cyclo>;
template class RatFuncT<Complex>;
template Complex evaluateRatFunc(const RatFuncT<Cyclo>&, const Rational&);
template Complex evaluateRatFunc(const RatFuncT<Complex>&, const Rational&);

ComplexRatFunc toComplexRatFunc(const RatFunc& r) {
  ComplexRatFunc::Numerator num;
  for (const auto& [e, c] : r.numerator()) num.emplace(e, c.toComplex());
  return ComplexRatFunc(r.p(), std::move(num), r.denominator());
}

bool operator==(const RatFunc& x, const RatFunc& y) {
  if (x.p() != y.p()) return false;
  auto den = commonDenominator(x, y);
  return numeratorOver(x, den) == numeratorOver(y, den);
}

namespace {

/// Exact quotient of a Laurent polynomial by a polynomial with nonzero constant term and
/// rational leading coefficient, if it divides.
std::optional<RatFunc::Numerator> divideExactly(const RatFunc::Numerator& num,
                                                const std::map<long, Cyclo>& divisor) {
  if (num.empty()) return RatFunc::Numerator{};
  const long shift = num.begin()->first;
  std::map<long, Cyclo> rem;
  for (const auto& [e, c] : num) rem.emplace(e - shift, c);
  const long top = divisor.rbegin()->first;
  const Cyclo leadInv(1 / divisor.rbegin()->second.rationalValue());
  RatFunc::Numerator quotient;
  while (!rem.empty() && rem.rbegin()->first >= top) {
    const auto lead = std::prev(rem.end());
    const long d = lead->first - top;
    const Cyclo q = lead->second * leadInv;
    rem.erase(lead);
    quotient.emplace(d + shift, q);
    for (const auto& [k, c] : divisor) {
      if (k == top) continue;
      auto [it, inserted] = rem.try_emplace(d + k, Cyclo());
      it->second -= q * c;
      if (it->second.isZero()) rem.erase(it);
    }
  }
  if (!rem.empty()) return std::nullopt;
  return quotient;
}

std::map<long, Cyclo> factorPolynomial(long p, const DenFactor& f) {
  return {{0, Cyclo(1)}, {f.b, Cyclo(-powP(p, -f.a))}};
}

/// (1 − x^d)/(1 − x) for x = p^{-a/d} t^{b/d}.
std::map<long, Cyclo> cofactor(long p, const DenFactor& f, long d) {
  std::map<long, Cyclo> out;
  for (long j = 0; j < d; ++j) out.emplace(j * f.b / d, Cyclo(powP(p, -j * f.a / d)));
  return out;
}

}  // namespace

RatFunc cancelled(const RatFunc& r) {
  RatFunc::Numerator num = r.numerator();
  RatFunc::Denominator den = r.denominator();
  // 1 − x^d = (1 − x)(1 + x + … + x^{d−1}): when the second factor divides the numerator the
  // pole moves to the coarser factor, which may then cancel in turn.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = den.begin(); it != den.end();) {
      auto& [f, k] = *it;
      while (k > 0) {
        auto q = divideExactly(num, factorPolynomial(r.p(), f));
        if (!q) break;
        num = std::move(*q);
        --k;
        changed = true;
      }
      for (long d = std::gcd(f.a, f.b); d > 1 && k > 0; --d) {
        if (f.a % d != 0 || f.b % d != 0) continue;
        auto q = divideExactly(num, cofactor(r.p(), f, d));
        if (!q) continue;
        num = std::move(*q);
        --k;
        ++den[DenFactor{f.a / d, f.b / d}];
        changed = true;
        break;
      }
      it = k == 0 ? den.erase(it) : std::next(it);
    }
  }
  return RatFunc(r.p(), std::move(num), std::move(den));
}

std::vector<PoleInfo> polesOf(const RatFunc& r) {
  std::vector<PoleInfo> poles;
  RatFunc reduced = cancelled(r);
  for (const auto& [f, k] : reduced.denominator()) {
    Rational re(-f.a, f.b);
    re.canonicalize();
    poles.push_back({re, f, k});
  }
  return poles;
}

LambdaPoly LaurentSeries::coefficient(int m) const {
  if (m < order || m > highest()) return LambdaPoly();
  return coefficients[m - order];
}

namespace {

using Series = std::vector<AlgNum>;

Series multiply(const Series& x, const Series& y, std::size_t K, long p) {
  Series out(K, AlgNum(p, Cyclo()));
  for (std::size_t i = 0; i < K && i < x.size(); ++i) {
    if (x[i].isZero()) continue;
    for (std::size_t j = 0; i + j < K && j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

/// Reciprocal of a series whose constant term has rational coefficients.
Series invert(const Series& a, std::size_t K, long p) {
  Series b(K, AlgNum(p, Cyclo()));
  const AlgNum inv0 = a.at(0).inverse();
  b[0] = inv0;
  for (std::size_t j = 1; j < K; ++j) {
    AlgNum acc(p, Cyclo());
    for (std::size_t i = 1; i <= j && i < a.size(); ++i) acc += a[i] * b[j - i];
    b[j] = -(inv0 * acc);
  }
  return b;
}

Rational factorial(long j) {
  Integer f = 1;
  for (long i = 2; i <= j; ++i) f *= i;
  return Rational(f);
}

AlgNum rat(long p, const Rational& q) { return AlgNum(p, Cyclo(q)); }

}  // namespace

LaurentSeries laurentExpand(const RatFunc& r, const Rational& beta, int J) {
  const long p = r.p();
  LaurentSeries out;
  out.p = p;
  out.beta = beta;
  if (r.isZero()) {
    out.order = 0;
    out.coefficients.assign(std::max(J + 1, 1), LambdaPoly());
    return out;
  }

  // Numerator: Σ_k n_k p^{kβ} e^{-kΛw}; the w^j coefficient is γ_j Λ^j with
  // γ_j = Σ_k n_k p^{kβ} (−k)^j / j!.
  std::vector<std::pair<long, AlgNum>> numTerms;
  for (const auto& [k, c] : r.numerator()) {
    numTerms.emplace_back(k, AlgNum(p, c) * AlgNum::pPower(p, beta * k));
  }
  auto numCoefficient = [&](long j) {
    AlgNum acc(p, Cyclo());
    for (const auto& [k, x] : numTerms) acc += x * rat(p, Rational(ipow(-k, static_cast<unsigned long>(j))) / factorial(j));
    return acc;
  };
  long vanish = 0;
  while (numCoefficient(vanish).isZero()) ++vanish;

  int singular = 0;
  for (const auto& [f, k] : r.denominator()) {
    if (beta * f.b == f.a) singular += k;
  }
  out.order = static_cast<int>(vanish) - singular;
  const std::size_t K = static_cast<std::size_t>(std::max(J - out.order + 1, 1));

  Series acc(K, rat(p, 0));
  for (std::size_t j = 0; j < K; ++j) acc[j] = numCoefficient(vanish + static_cast<long>(j));

  // u/(1 − e^{−u}) = 1/h(u), h(u) = Σ (−1)^j u^j/(j+1)!.
  Series h(K);
  for (std::size_t j = 0; j < K; ++j) {
    h[j] = rat(p, Rational(j % 2 == 0 ? 1 : -1) / factorial(static_cast<long>(j) + 1));
  }
  const Series bernoulli = invert(h, K, p);

  for (const auto& [f, k] : r.denominator()) {
    Series factor(K);
    if (beta * f.b == f.a) {
      // (1 − e^{−bΛw})^{-1} = (Λw)^{-1} · b^{-1} Σ_j H_j b^j (Λw)^j.
      for (std::size_t j = 0; j < K; ++j) {
        factor[j] = bernoulli[j] * rat(p, Rational(ipow(f.b, j)) / f.b);
      }
    } else {
      // (1 − c e^{−bΛw})^{-1}, c = p^{bβ − a}.
      const AlgNum c = AlgNum::pPower(p, beta * f.b - f.a);
      Series a(K);
      a[0] = rat(p, 1) - c;
      for (std::size_t j = 1; j < K; ++j) {
        a[j] = -(c * rat(p, Rational(ipow(-f.b, j)) /
                                factorial(static_cast<long>(j))));
      }
      factor = invert(a, K, p);
    }
    for (int i = 0; i < k; ++i) acc = multiply(acc, factor, K, p);
  }

  out.coefficients.reserve(K);
  for (std::size_t j = 0; j < K; ++j) {
    out.coefficients.push_back(LambdaPoly::monomial(acc[j], out.order + static_cast<int>(j)));
  }
  return out;
}

}  // namespace padicfs
