#include "padicfs/zeta.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace padicfs {

namespace {

constexpr long kInfinity = std::numeric_limits<long>::max() / 4;

long degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0L); }

bool isOrigin(const MultiIndex& alpha) { return degree(alpha) == 0; }

/// min over α ≠ 0 of v(f_α(a)) + e|α|, i.e. −log_p of the largest nonconstant Taylor term.
long taylorTail(long p, const Polynomial::Terms& taylor, long e) {
  long best = kInfinity;
  for (const auto& [alpha, c] : taylor) {
    if (isOrigin(alpha)) continue;
    best = std::min(best, *valuation(p, c) + e * degree(alpha));
  }
  return best;
}

long valueAtCenter(long p, const Polynomial::Terms& taylor) {
  for (const auto& [alpha, c] : taylor) {
    if (isOrigin(alpha)) return *valuation(p, c);
  }
  return kInfinity;
}

std::atomic<long> gFactors{0};
std::atomic<long> gViolations{0};

void audit(const DenFactor& f) {
  gFactors.fetch_add(1, std::memory_order_relaxed);
  if (f.a < 1 || f.b < 1) gViolations.fetch_add(1, std::memory_order_relaxed);
}

std::optional<MultCharacter> effective(const std::optional<MultCharacter>& chi) {
  if (chi && chi->isTrivial()) return std::nullopt;
  return chi;
}

std::mutex gCacheMutex;
std::unordered_map<std::string, ZetaResult> gCache;
std::shared_ptr<ZetaStore> gStore;

struct Engine {
  const Polynomial& f;
  const std::optional<MultCharacter>& chi;
  std::string prefix;
  std::optional<int> homogeneous;

  ZetaResult run(const Ball& b, int depth) {
    const std::string key = prefix + b.toString() + "|" + std::to_string(depth);
    {
      std::lock_guard lock(gCacheMutex);
      auto it = gCache.find(key);
      if (it != gCache.end()) return it->second;
    }
    ZetaResult r = compute(b, depth);
    std::lock_guard lock(gCacheMutex);
    gCache.insert_or_assign(key, r);
    return r;
  }

  ZetaResult compute(const Ball& b, int depth) {
    const long p = b.p();
    const int n = b.dimension();
    const Rational vol = b.volume();
    if (auto unit = certifyUnitBall(f, b, chi.has_value());
        unit && (!chi || unit->angularConstant)) {
      Cyclo c(vol);
      if (chi) c *= chi->ofAngular(f.evaluate(b.center()));
      return {RatFunc::monomial(p, c, unit->v), true, {}};
    }
    if (auto smooth = certifySmoothZero(f, b)) {
      if (chi) return {RatFunc(p), true, {}};
      const DenFactor den{1, 1};
      audit(den);
      return {RatFunc(p, {{b.level() + smooth->d, Cyclo(vol * (1 - powP(p, -1)))}}, {{den, 1}}),
              true,
              {}};
    }
    if (depth <= 0) return {RatFunc(p), false, {{b, supBound(f, b)}}};
    ZetaResult total{RatFunc(p), true, {}};
    const bool scale = homogeneous && b.isCenteredAtZero();
    for (const Ball& child : b.subdivide()) {
      if (scale && child.isCenteredAtZero()) continue;
      ZetaResult part = run(child, depth - 1);
      total.value = total.value + part.value;
      total.certified = total.certified && part.certified;
      total.undecided.insert(total.undecided.end(), part.undecided.begin(), part.undecided.end());
    }
    if (scale) {
      const DenFactor den{n, *homogeneous};
      audit(den);
      total.value = total.value.dividedBy(den);
    }
    return total;
  }
};

Complex pPowerComplex(long p, Complex exponent) {
  return std::exp(exponent * std::log(static_cast<double>(p)));
}

struct Oracle {
  const Polynomial& f;
  const std::optional<MultCharacter>& chi;
  Complex s0;
  Complex center{0.0, 0.0};
  double radius = 0.0;

  void run(const Ball& b, const Complex& weight, int remaining) {
    const long p = b.p();
    const double vol = toDouble(b.volume()) * std::abs(weight);
    const Complex wvol = toDouble(b.volume()) * weight;
    if (auto unit = certifyUnitBall(f, b, chi.has_value());
        unit && (!chi || unit->angularConstant)) {
      Complex c = wvol * pPowerComplex(p, -static_cast<double>(unit->v) * s0);
      if (chi) c *= chi->ofAngular(f.evaluate(b.center())).toComplex();
      center += c;
      return;
    }
    if (auto smooth = certifySmoothZero(f, b)) {
      if (chi) return;  // every radial shell carries a full character sum
      const long base = b.level() + smooth->d;
      const double q = 1.0 / static_cast<double>(p);
      for (int k = 0; k <= remaining; ++k) {
        center += wvol * (1.0 - q) * std::pow(q, k) * pPowerComplex(p, -static_cast<double>(base + k) * s0);
      }
      const int next = remaining + 1;
      radius += vol * std::pow(q, next) * std::pow(q, static_cast<double>(base + next) * s0.real());
      return;
    }
    if (remaining <= 0) {
      radius += vol * std::pow(supBound(f, b), s0.real());
      return;
    }
    for (const Ball& child : b.subdivide()) run(child, weight, remaining - 1);
  }
};

}  // namespace

std::optional<UnitCertificate> certifyUnitBall(const Polynomial& f, const Ball& b, bool /*needAngular*/) {
  const long p = b.p();
  const auto taylor = f.hasseTaylor(b.center());
  const long v0 = valueAtCenter(p, taylor);
  if (v0 == kInfinity) return std::nullopt;
  const long tail = taylorTail(p, taylor, b.level());
  if (tail <= v0) return std::nullopt;
  // Valuations are integers, so strict domination already gains a full power of p.
  return UnitCertificate{v0, tail >= v0 + 1};
}

std::optional<SmoothZeroCertificate> certifySmoothZero(const Polynomial& f, const Ball& b) {
  const long p = b.p();
  const long e = b.level();
  const auto taylor = f.hasseTaylor(b.center());
  const long v0 = valueAtCenter(p, taylor);
  const long tail = taylorTail(p, taylor, e);
  for (int i = 0; i < f.dimension(); ++i) {
    const auto dt = f.partial(i).hasseTaylor(b.center());
    const long d = valueAtCenter(p, dt);
    if (d == kInfinity) continue;
    if (taylorTail(p, dt, e) <= d) continue;
    if (v0 < e + d) continue;
    if (tail < e + d) continue;
    return SmoothZeroCertificate{i + 1, d};
  }
  return std::nullopt;
}

double supBound(const Polynomial& f, const Ball& b) {
  const long p = b.p();
  const auto taylor = f.hasseTaylor(b.center());
  long best = std::min(valueAtCenter(p, taylor), taylorTail(p, taylor, b.level()));
  if (best == kInfinity) return 0.0;
  return std::pow(static_cast<double>(p), -static_cast<double>(best));
}

ZetaResult zetaBall(const Polynomial& f, const std::optional<MultCharacter>& chi, const Ball& b,
                    int depth) {
  if (f.isZero()) throw Error("zeta of zero polynomial");
  if (f.dimension() != b.dimension()) throw Error("polynomial and ball dimensions differ");
  const auto twist = effective(chi);
  if (twist && twist->p() != b.p()) throw Error("character and ball primes differ");
  Engine engine{f, twist, "", f.homogeneousDegree()};
  engine.prefix = std::to_string(b.p()) + "|" + f.toString() + "|" + (twist ? twist->key() : "-") + "|";
  if (engine.homogeneous && *engine.homogeneous == 0) engine.homogeneous.reset();
  std::shared_ptr<ZetaStore> store;
  {
    std::lock_guard lock(gCacheMutex);
    store = gStore;
  }
  if (!store) return engine.run(b, depth);
  const std::string key = engine.prefix + b.toString() + "|" + std::to_string(depth);
  {
    std::lock_guard lock(gCacheMutex);
    auto it = gCache.find(key);
    if (it != gCache.end()) return it->second;
  }
  if (auto stored = store->load(key)) {
    std::lock_guard lock(gCacheMutex);
    gCache.insert_or_assign(key, *stored);
    return *stored;
  }
  ZetaResult r = engine.run(b, depth);
  store->save(key, r);
  return r;
}

template <class C>
ZetaResultT<C> zetaOf(const Polynomial& f, const std::optional<MultCharacter>& chi,
                      const SBFunction<C>& phi, int depth) {
  if (f.isZero()) throw Error("zeta of zero polynomial");
  ZetaResultT<C> out{RatFuncT<C>(phi.p()), true, {}};
  for (const auto& [ball, c] : phi.terms()) {
    ZetaResult part = zetaBall(f, chi, ball, depth);
    if constexpr (std::is_same_v<C, Cyclo>) {
      out.value = out.value + part.value.scaled(c);
    } else {
      out.value = out.value + toComplexRatFunc(part.value).scaled(c);
    }
    out.certified = out.certified && part.certified;
    out.undecided.insert(out.undecided.end(), part.undecided.begin(), part.undecided.end());
  }
  return out;
}

template <class C>
ZetaBracket truncatedZeta(const Polynomial& f, const std::optional<MultCharacter>& chi,
                          const SBFunction<C>& phi, Complex s0, int D) {
  if (s0.real() <= 0) throw Error("oracle valid only in the convergence half-plane");
  if (f.isZero()) throw Error("zeta of zero polynomial");
  const auto twist = effective(chi);
  Oracle oracle{f, twist, s0};
  for (const auto& [ball, c] : phi.terms()) oracle.run(ball, CoefOps<C>::toComplex(c), D);
  return {oracle.center, oracle.radius};
}

template ZetaResultT<Cyclo> zetaOf(const Polynomial&, const std::optional<MultCharacter>&,
                                   const SBFunction<Cyclo>&, int);
template ZetaResultT<Complex> zetaOf(const Polynomial&, const std::optional<MultCharacter>&,
                                     const SBFunction<Complex>&, int);
template ZetaBracket truncatedZeta(const Polynomial&, const std::optional<MultCharacter>&,
                                   const SBFunction<Cyclo>&, Complex, int);
template ZetaBracket truncatedZeta(const Polynomial&, const std::optional<MultCharacter>&,
                                   const SBFunction<Complex>&, Complex, int);

EmissionAudit emissionAudit() { return {gFactors.load(), gViolations.load()}; }

void setZetaStore(std::shared_ptr<ZetaStore> store) {
  std::lock_guard lock(gCacheMutex);
  gStore = std::move(store);
}

void clearZetaCache() {
  std::lock_guard lock(gCacheMutex);
  gCache.clear();
}

std::size_t zetaCacheSize() {
  std::lock_guard lock(gCacheMutex);
  return gCache.size();
}

}  // namespace padicfs
