#include "padicfs/sb_function.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "padicfs/padic.hpp"

namespace padicfs {

Cyclo CoefOps<Cyclo>::psi(long p, const Rational& x) {
  Rational frac = fracP(p, x);
  if (frac == 0) return Cyclo(1);
  const Integer& den = frac.get_den();
  return Cyclo::root(den.get_si(), frac.get_num().get_si());
}

Complex CoefOps<Complex>::psi(long p, const Rational& x) {
  Rational frac = fracP(p, x);
  if (frac == 0) return {1.0, 0.0};
  // frac = m / p^k exactly; reduce the angle in integers before converting.
  double angle = 2.0 * std::numbers::pi * toDouble(frac);
  return {std::cos(angle), std::sin(angle)};
}

namespace {

template <class C>
bool approxEqual(const C& a, const C& b) {
  if constexpr (std::is_same_v<C, Complex>) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-13 * scale;
  } else {
    return a == b;
  }
}

template <class C>
using BallMap = std::map<Ball, C>;

template <class C>
void addTo(BallMap<C>& m, const Ball& b, const C& c) {
  auto [it, inserted] = m.try_emplace(b, c);
  if (!inserted) it->second += c;
}

template <class C>
void dropZeros(BallMap<C>& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (CoefOps<C>::isZero(it->second)) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}

template <class C>
void refineToDisjoint(BallMap<C>& m) {
  while (true) {
    std::set<long> levels;
    for (const auto& [b, c] : m) levels.insert(b.level());
    std::set<Ball> toSplit;
    for (const auto& [b, c] : m) {
      for (long l : levels) {
        if (l >= b.level()) break;
        Ball a = b.ancestor(l);
        if (m.count(a)) toSplit.insert(a);
      }
    }
    if (toSplit.empty()) return;
    for (const auto& a : toSplit) {
      auto it = m.find(a);
      if (it == m.end()) continue;
      C c = it->second;
      m.erase(it);
      for (auto& child : a.subdivide()) addTo(m, child, c);
    }
  }
}

template <class C>
void coarsen(BallMap<C>& m, long p, int n) {
  if (m.empty()) return;
  std::size_t family = 1;
  for (int i = 0; i < n; ++i) family *= static_cast<std::size_t>(p);
  long level = m.rbegin()->first.level();
  for (const auto& [b, c] : m) level = std::max(level, b.level());
  while (true) {
    if (m.empty()) break;
    long minLevel = m.begin()->first.level();
    for (const auto& [b, c] : m) minLevel = std::min(minLevel, b.level());
    if (level < minLevel) break;
    std::map<Ball, std::vector<Ball>> groups;
    for (const auto& [b, c] : m) {
      if (b.level() == level) groups[b.parent()].push_back(b);
    }
    for (const auto& [parent, kids] : groups) {
      if (kids.size() != family) continue;
      const C& first = m.at(kids.front());
      bool same = true;
      for (const auto& k : kids) {
        if (!(m.at(k) == first)) {
          same = false;
          break;
        }
      }
      if (!same) continue;
      C c = first;
      for (const auto& k : kids) m.erase(k);
      m.emplace(parent, c);
    }
    --level;
  }
}

template <class C>
std::vector<typename SBFunction<C>::Term> normalizeList(long p, int n,
                                                        std::vector<typename SBFunction<C>::Term> raw) {
  BallMap<C> m;
  for (auto& [b, c] : raw) {
    if (b.p() != p || b.dimension() != n) throw Error("ball does not match function prime/dimension");
    addTo(m, b, c);
  }
  dropZeros(m);
  refineToDisjoint(m);
  dropZeros(m);
  coarsen(m, p, n);
  return {m.begin(), m.end()};
}

}  // namespace

template <class C>
SBFunction<C>::SBFunction(long p, int n) : p_(p), n_(n) {}

template <class C>
SBFunction<C> SBFunction<C>::fromRaw(long p, int n, std::vector<Term> raw) {
  SBFunction f(p, n);
  f.terms_ = normalizeList<C>(p, n, std::move(raw));
  return f;
}

template <class C>
SBFunction<C> SBFunction<C>::indicator(const Ball& b, const C& coefficient) {
  return fromRaw(b.p(), b.dimension(), {{b, coefficient}});
}

template <class C>
C SBFunction<C>::evaluate(std::span<const Rational> x) const {
  for (const auto& [b, c] : terms_) {
    if (b.contains(x)) return c;
  }
  return CoefOps<C>::zero();
}

template <class C>
C SBFunction<C>::integrate() const {
  C sum = CoefOps<C>::zero();
  for (const auto& [b, c] : terms_) sum += c * CoefOps<C>::fromRational(b.volume());
  return sum;
}

template <class C>
C SBFunction<C>::normSquared() const {
  C sum = CoefOps<C>::zero();
  for (const auto& [b, c] : terms_) {
    sum += c * CoefOps<C>::conj(c) * CoefOps<C>::fromRational(b.volume());
  }
  return sum;
}

template <class C>
Resolution SBFunction<C>::resolution() const {
  Resolution r{0, 0};
  bool first = true;
  for (const auto& [b, c] : terms_) {
    long support = -b.level();
    for (const auto& x : b.center()) {
      if (auto v = valuation(p_, x)) support = std::max(support, -*v);
    }
    if (first) {
      r = {support, b.level()};
      first = false;
    } else {
      r.M = std::max(r.M, support);
      r.N = std::max(r.N, b.level());
    }
  }
  if (r.M + r.N < 0) r.N = -r.M;
  return r;
}

template <class C>
SBFunction<C> SBFunction<C>::operator+(const SBFunction& o) const {
  std::vector<Term> raw = terms_;
  raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
  return fromRaw(p_, n_, std::move(raw));
}

template <class C>
SBFunction<C> SBFunction<C>::operator-(const SBFunction& o) const {
  return *this + o.scaled(CoefOps<C>::fromRational(-1));
}

template <class C>
SBFunction<C> SBFunction<C>::scaled(const C& c) const {
  std::vector<Term> raw;
  for (const auto& [b, v] : terms_) raw.emplace_back(b, v * c);
  return fromRaw(p_, n_, std::move(raw));
}

template <class C>
SBFunction<C> SBFunction<C>::translated(std::span<const Rational> shift) const {
  std::vector<Term> raw;
  for (const auto& [b, v] : terms_) raw.emplace_back(b.translated(shift), v);
  return fromRaw(p_, n_, std::move(raw));
}

template <class C>
std::vector<typename SBFunction<C>::Term> SBFunction<C>::refinedTo(long level) const {
  std::vector<Term> out;
  std::vector<Term> work = terms_;
  while (!work.empty()) {
    Term t = std::move(work.back());
    work.pop_back();
    if (t.first.level() >= level) {
      out.push_back(std::move(t));
      continue;
    }
    for (auto& child : t.first.subdivide()) work.emplace_back(child, t.second);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  return out;
}

template <class C>
bool SBFunction<C>::operator==(const SBFunction& o) const {
  if (p_ != o.p_ || n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].first == o.terms_[i].first) || !(terms_[i].second == o.terms_[i].second)) {
      return false;
    }
  }
  return true;
}

ComplexSB toComplexSB(const ExactSB& f) {
  std::vector<ComplexSB::Term> raw;
  for (const auto& [b, c] : f.terms()) raw.emplace_back(b, c.toComplex());
  return ComplexSB::fromRaw(f.p(), f.dimension(), std::move(raw));
}

template <class C>
std::vector<typename SBFunction<C>::Term> compress(const SBFunction<C>& f) {
  using Term = typename SBFunction<C>::Term;
  if (f.isZero()) return {};
  const long p = f.p();
  const int n = f.dimension();
  std::size_t family = 1;
  for (int i = 0; i < n; ++i) family *= static_cast<std::size_t>(p);
  BallMap<C> m(f.terms().begin(), f.terms().end());
  long level = f.terms().front().first.level();
  for (const auto& [b, c] : m) level = std::max(level, b.level());
  while (true) {
    if (m.empty()) break;
    long minLevel = m.begin()->first.level();
    for (const auto& [b, c] : m) minLevel = std::min(minLevel, b.level());
    if (level < minLevel) break;
    std::map<Ball, std::vector<Ball>> groups;
    for (const auto& [b, c] : m) {
      if (b.level() == level) groups[b.parent()].push_back(b);
    }
    for (const auto& [parent, kids] : groups) {
      if (kids.size() < 2) continue;
      // Majority value among present children; absent children count as zero.
      std::size_t bestCount = 0;
      C best = CoefOps<C>::zero();
      for (const auto& k : kids) {
        const C& v = m.at(k);
        std::size_t count = 0;
        for (const auto& other : kids) count += approxEqual(m.at(other), v) ? 1 : 0;
        if (count > bestCount) {
          bestCount = count;
          best = v;
        }
      }
      const std::size_t absent = family - kids.size();
      if (bestCount < 2 || bestCount <= absent + 1) continue;
      std::set<Ball> present(kids.begin(), kids.end());
      for (const auto& child : parent.subdivide()) {
        if (!present.count(child)) {
          m.emplace(child, CoefOps<C>::zero() - best);
          continue;
        }
        C& v = m.at(child);
        if (approxEqual(v, best)) {
          m.erase(child);
        } else {
          v -= best;
        }
      }
      addTo(m, parent, best);
    }
    --level;
  }
  dropZeros(m);
  return std::vector<Term>(m.begin(), m.end());
}

template <class C>
SBFunction<C> fourierOfRaw(long p, int n, const std::vector<typename SBFunction<C>::Term>& raw,
                           int sign) {
  using Term = typename SBFunction<C>::Term;
  std::vector<Term> out;
  for (const auto& [ball, coef] : raw) {
    const long e = ball.level();
    const C scale = coef * CoefOps<C>::fromRational(ball.volume());
    // Ψ(±[a, ξ]) is constant on cosets of p^{-w} Z^n, w = min_i v(a_i) < e.
    long w = e;
    for (const auto& a : ball.center()) {
      if (auto v = valuation(p, a)) w = std::min(w, *v);
    }
    if (w == e) {
      out.emplace_back(Ball::centered(p, n, -e), scale);
      continue;
    }
    const long span = e - w;
    double cells = std::pow(static_cast<double>(p), static_cast<double>(span * n));
    if (cells > 1e7) throw Error("Fourier transform of ball " + ball.toString() + " is too fine");
    const long perAxis = static_cast<long>(std::llround(std::pow(static_cast<double>(p), span)));
    const Rational stride = powP(p, -e);
    std::vector<long> k(n, 0);
    while (true) {
      std::vector<Rational> xi(n);
      Rational dot(0);
      for (int i = 0; i < n; ++i) {
        xi[i] = stride * k[i];
        dot += ball.center()[i] * xi[i];
      }
      out.emplace_back(Ball(p, -w, std::move(xi)), scale * CoefOps<C>::psi(p, sign * dot));
      int i = n - 1;
      while (i >= 0 && ++k[i] == perAxis) {
        k[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return SBFunction<C>::fromRaw(p, n, std::move(out));
}

template <class C>
SBFunction<C> fourier(const SBFunction<C>& f) {
  return fourierOfRaw<C>(f.p(), f.dimension(), compress(f), -1);
}

template <class C>
SBFunction<C> inverseFourier(const SBFunction<C>& f) {
  return fourierOfRaw<C>(f.p(), f.dimension(), compress(f), +1);
}

template class SBFunction<Cyclo>;
template class SBFunction<Complex>;
template std::vector<ExactSB::Term> compress(const ExactSB&);
template std::vector<ComplexSB::Term> compress(const ComplexSB&);
template ExactSB fourier(const ExactSB&);
template ComplexSB fourier(const ComplexSB&);
template ExactSB inverseFourier(const ExactSB&);
template ComplexSB inverseFourier(const ComplexSB&);
template ExactSB fourierOfRaw<Cyclo>(long, int, const std::vector<ExactSB::Term>&, int);
template ComplexSB fourierOfRaw<Complex>(long, int, const std::vector<ComplexSB::Term>&, int);

}  // namespace padicfs
