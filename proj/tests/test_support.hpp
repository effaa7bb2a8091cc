#pragma once

#include <random>
#include <vector>

#include "padicfs/sb_function.hpp"

namespace padicfs::testing {

/// Random normalized test function: up to maxBalls balls at levels in [minLevel, maxLevel],
/// centers drawn from p^{minLevel}Z / p^{maxLevel}, small rational coefficients.
inline ExactSB randomExactSB(std::mt19937_64& rng, long p, int n, int maxBalls, long minLevel,
                             long maxLevel) {
  std::uniform_int_distribution<int> count(1, maxBalls);
  std::uniform_int_distribution<long> level(minLevel, maxLevel);
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<ExactSB::Term> raw;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    long e = level(rng);
    std::vector<Rational> center(n);
    long span = 1;
    for (long j = minLevel; j < e; ++j) span *= p;
    std::uniform_int_distribution<long> digit(0, span - 1);
    for (int c = 0; c < n; ++c) center[c] = powP(p, minLevel) * digit(rng);
    Rational coef(num(rng), den(rng));
    coef.canonicalize();
    if (coef == 0) coef = 1;
    raw.emplace_back(Ball(p, e, std::move(center)), Cyclo(coef));
  }
  return ExactSB::fromRaw(p, n, std::move(raw));
}

/// Same, forced to integrate to zero by subtracting a multiple of the unit-ball indicator
/// of a ball containing the support.
inline ExactSB randomMeanZeroSB(std::mt19937_64& rng, long p, int n, int maxBalls,
                                long minLevel, long maxLevel) {
  while (true) {
    ExactSB f = randomExactSB(rng, p, n, maxBalls, minLevel, maxLevel);
    Cyclo mass = f.integrate();
    Ball hull = Ball::centered(p, n, minLevel);
    ExactSB g = f - ExactSB::indicator(hull, mass * Cyclo(Rational(1) / hull.volume()));
    if (!g.isZero()) return g;
  }
}

inline double maxAbsDiff(const ComplexSB& a, const ComplexSB& b) {
  ComplexSB d = a - b;
  double m = 0.0;
  for (const auto& [ball, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace padicfs::testing
