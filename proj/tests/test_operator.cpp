#include <cmath>
#include <random>

#include "doctest.h"
#include "padicfs/grid.hpp"
#include "padicfs/operator.hpp"
#include "test_support.hpp"

using namespace padicfs;

namespace {

Polynomial X(int n, int i) { return Polynomial::variable(n, i); }
Polynomial K(int n, long c) { return Polynomial::constant(n, Rational(c)); }

Complex at(const ComplexSB& f, std::vector<Rational> x) { return f.evaluate(x); }

double vladimirovAtZero(long p, double alpha) {
  return (1.0 - 1.0 / p) / (1.0 - std::pow(p, -(alpha + 1.0)));
}

}  // namespace

TEST_CASE("zero input") {
  SymbolSpec sym{X(2, 0) * X(2, 1), Rational(3, 2)};
  ApplyReport r = applyOperator(sym, ExactSB(3, 2), 4);
  CHECK(r.result.isZero());
  CHECK(r.exact);
  CHECK(r.l2ErrorBound == 0.0);
  SymbolSpec bad{X(1, 0), Rational(-1)};
  CHECK_THROWS_AS(applyOperator(bad, ExactSB::indicator(Ball::unit(3, 1)), 2), Error);
}

TEST_CASE("certified symbols act exactly") {
  SymbolSpec sym{X(1, 0).pow(2) + K(1, 1), Rational(1)};
  ApplyReport r = applyOperator(sym, ExactSB::indicator(Ball::unit(3, 1)), 1);
  CHECK(r.exact);
  CHECK(r.l2ErrorBound == 0.0);
  REQUIRE(r.exactResult);
  CHECK(*r.exactResult == ExactSB::indicator(Ball::unit(3, 1)));

  // |ξ² − 3|_3 is 1/3 on 3Z_3 and 1 elsewhere; compare with the three-coset sum.
  for (long beta : {1L, 2L}) {
    SymbolSpec s{X(1, 0).pow(2) - K(1, 3), Rational(beta)};
    ApplyReport q = applyOperator(s, ExactSB::indicator(Ball::unit(3, 1)), 1);
    REQUIRE(q.exact);
    REQUIRE(q.exactResult);
    for (Rational x : {Rational(0), Rational(1, 3), Rational(2, 3), Rational(5, 3), Rational(1, 9)}) {
      Complex oracle(0.0, 0.0);
      if (valuation(3, x).value_or(0) >= -1) {
        for (long k = 0; k < 3; ++k) {
          double sym = std::pow(toDouble(absP(3, Rational(k * k - 3))), beta);
          oracle += sym / 3.0 * CoefOps<Complex>::psi(3, x * k);
        }
      }
      CHECK(std::abs(at(q.result, {x}) - oracle) < 1e-14);
    }
  }
}

TEST_CASE("Riesz symbol at the origin") {
  for (long p : {2L, 3L}) {
    for (Rational alpha : {Rational(1, 2), Rational(2)}) {
      SymbolSpec sym{X(1, 0), alpha};
      double previous = INFINITY;
      for (int depth : {1, 3, 5, 8}) {
        ApplyReport r = applyOperator(sym, ExactSB::indicator(Ball::unit(p, 1)), depth);
        CHECK_FALSE(r.exact);
        CHECK(r.l2ErrorBound <= previous);
        CHECK(r.l2ErrorBound <= std::pow(p, -depth * toDouble(alpha)) * std::pow(p, -depth / 2.0) + 1e-15);
        previous = r.l2ErrorBound;
        CHECK(std::abs(at(r.result, {Rational(0)}) - vladimirovAtZero(p, toDouble(alpha))) < 1e-12);
      }
    }
  }
}

TEST_CASE("Vladimirov operator") {
  for (long p : {2L, 3L, 5L}) {
    // FΦ = 1_{Z_p} − 1_{pZ_p}: the symbol is 1 on the support.
    ExactSB shell = ExactSB::indicator(Ball::unit(p, 1)) - ExactSB::indicator(Ball(p, 1, {Rational(0)}));
    ExactSB phi = inverseFourier(shell);
    for (Rational alpha : {Rational(1, 2), Rational(3)}) {
      ApplyReport r = applyVladimirov(alpha, phi, 6);
      CHECK(r.exact);
      CHECK(r.l2ErrorBound == 0.0);
      CHECK(testing::maxAbsDiff(r.result, toComplexSB(phi)) < 1e-14);
    }
    for (int depth : {2, 6, 12}) {
      ApplyReport r = applyVladimirov(Rational(1, 2), ExactSB::indicator(Ball::unit(p, 1)), depth);
      CHECK(std::abs(at(r.result, {Rational(0)}) - vladimirovAtZero(p, 0.5)) < 1e-12);
    }
  }
  // Grid DFT oracle: p = 2, α = 2, symbol sampled on Z_2 mod 2^D.
  const int D = 10;
  GridFunction g{2, 1, {0, D}, {}};
  g.values.resize(static_cast<std::size_t>(1) << D);
  for (std::size_t k = 1; k < g.values.size(); ++k) {
    g.values[k] = std::pow(toDouble(absP(2, Rational(static_cast<long>(k)))), 2.0);
  }
  GridFunction u = gridInverseFourier(g);
  ApplyReport r = applyVladimirov(Rational(2), ExactSB::indicator(Ball::unit(2, 1)), D);
  // x = 1 lies in the grid cell of index 0 (cells are cosets of Z_2).
  CHECK(std::abs(at(r.result, {Rational(1)}) - u.values[0]) < 1e-8);
  CHECK(std::abs(at(r.result, {Rational(1)}) - vladimirovAtZero(2, 2.0)) < 1e-12);
  // Matches the general operator with f = ξ.
  ApplyReport general = applyOperator(SymbolSpec{X(1, 0), Rational(2)}, ExactSB::indicator(Ball::unit(2, 1)), D);
  CHECK(testing::maxAbsDiff(general.result, r.result) < 1e-12);
}

TEST_CASE("translation invariance and linearity") {
  std::mt19937_64 rng(99);
  SymbolSpec exactSym{X(1, 0).pow(2) + K(1, 1), Rational(1)};
  SymbolSpec riesz{X(1, 0), Rational(1, 2)};
  for (int trial = 0; trial < 10; ++trial) {
    ExactSB phi = testing::randomExactSB(rng, 3, 1, 5, -1, 2);
    ExactSB psi = testing::randomExactSB(rng, 3, 1, 5, -1, 2);
    Rational sh(static_cast<long>(rng() % 27), 9);
    sh.canonicalize();
    std::vector<Rational> shift{sh};

    ApplyReport a = applyOperator(exactSym, phi, 6);
    ApplyReport b = applyOperator(exactSym, phi.translated(shift), 6);
    REQUIRE(a.exactResult);
    REQUIRE(b.exactResult);
    CHECK(*b.exactResult == a.exactResult->translated(shift));

    ApplyReport c = applyOperator(riesz, phi, 5);
    ApplyReport d = applyOperator(riesz, phi.translated(shift), 5);
    CHECK(testing::maxAbsDiff(d.result, c.result.translated(shift)) < 1e-12);
    CHECK(std::abs(c.l2ErrorBound - d.l2ErrorBound) < 1e-15);

    Cyclo x(Rational(2, 5)), y = Cyclo::root(9, 2);
    ApplyReport sum = applyOperator(exactSym, phi.scaled(x) + psi.scaled(y), 6);
    ApplyReport e1 = applyOperator(exactSym, psi, 6);
    REQUIRE(sum.exactResult);
    REQUIRE(e1.exactResult);
    CHECK(*sum.exactResult == a.exactResult->scaled(x) + e1.exactResult->scaled(y));

    ApplyReport rsum = applyOperator(riesz, phi + psi, 5);
    ApplyReport r2 = applyOperator(riesz, psi, 5);
    CHECK(testing::maxAbsDiff(rsum.result, c.result + r2.result) < 1e-12);
  }
}

TEST_CASE("refinement and positivity") {
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L}) {
    SymbolSpec sym{X(2, 0) * X(2, 1), Rational(1, 2)};
    ExactSB phi = testing::randomExactSB(rng, p, 2, 4, 0, 1);
    double previous = INFINITY;
    for (int depth = 0; depth <= 3; ++depth) {
      ApplyReport r = applyOperator(sym, phi, depth);
      CHECK(r.l2ErrorBound <= previous + 1e-18);
      previous = r.l2ErrorBound;
      for (const auto& [ball, m] : r.multiplier.terms()) {
        CHECK(m.real() > 0.0);
        CHECK(std::abs(m.imag()) < 1e-15);
      }
    }
  }
  SymbolSpec exact{X(1, 0).pow(2) + K(1, 1), Rational(1)};
  ExactSB unit = ExactSB::indicator(Ball::unit(3, 1));
  ApplyReport once = applyOperator(exact, unit, 1);
  ApplyReport more = applyOperator(exact, unit, 5);
  REQUIRE(once.exactResult);
  REQUIRE(more.exactResult);
  CHECK(*once.exactResult == *more.exactResult);
}

TEST_CASE("twisted symbol") {
  MultCharacter chi = MultCharacter::quadratic(3);
  SymbolSpec sym{X(1, 0), Rational(1), std::nullopt, chi};
  ApplyReport r = applyOperator(sym, ExactSB::indicator(Ball::unit(3, 1)), 4);
  // Every shell integrates χ to zero, so the twisted core average vanishes.
  CHECK(std::abs(at(r.result, {Rational(0)})) < 1e-14);
  for (const auto& [ball, m] : r.multiplier.terms()) {
    if (ball.isCenteredAtZero()) {
      CHECK(std::abs(m) < 1e-15);
    } else {
      Rational a = ball.center()[0];
      Complex expected = chi.ofAngular(a).toComplex() * toDouble(absP(3, a));
      CHECK(std::abs(m - expected) < 1e-15);
    }
  }
}
