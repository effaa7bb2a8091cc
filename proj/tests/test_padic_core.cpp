#include <random>

#include "doctest.h"
#include "padicfs/algebraic.hpp"
#include "padicfs/ball.hpp"
#include "padicfs/character.hpp"
#include "padicfs/padic.hpp"
#include "padicfs/polynomial.hpp"

using namespace padicfs;

namespace {

Rational randomRational(std::mt19937_64& rng, long p) {
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 60);
  std::uniform_int_distribution<long> shift(-3, 3);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r * powP(p, shift(rng));
}

}  // namespace

TEST_CASE("valuation examples") {
  CHECK(valuation(3, Rational(18)) == 2);
  CHECK(valuation(5, Rational(7, 25)) == -2);
  CHECK_FALSE(valuation(2, Rational(0)).has_value());
  CHECK(absP(3, Rational(18)) == Rational(1, 9));
}

TEST_CASE("angular component examples") {
  CHECK(angularComponent(3, Rational(18), 1) == 2);
  CHECK(angularComponent(5, Rational(7, 25), 1) == 2);
  CHECK(angularComponent(7, Rational(-1), 1) == 6);
  CHECK_THROWS_WITH_AS(angularComponent(3, Rational(0), 1), "angular component undefined at zero",
                       Error);
}

TEST_CASE("prime context rejects composites") {
  CHECK_NOTHROW(PrimeContext(7));
  CHECK_THROWS_AS(PrimeContext(9), Error);
}

TEST_CASE("valuation is multiplicative and ultrametric") {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 200; ++trial) {
      Rational x = randomRational(rng, p);
      Rational y = randomRational(rng, p);
      if (x == 0 || y == 0) continue;
      CHECK(*valuation(p, Rational(x * y)) == *valuation(p, x) + *valuation(p, y));
      auto vs = valuation(p, Rational(x + y));
      long lo = std::min(*valuation(p, x), *valuation(p, y));
      if (vs) CHECK(*vs >= lo);
      if (*valuation(p, x) != *valuation(p, y)) CHECK(*vs == lo);
    }
  }
}

TEST_CASE("hasse taylor examples") {
  Polynomial x2 = Polynomial::variable(1, 0).pow(2);
  std::vector<Rational> a{Rational(3)};
  auto h = x2.hasseTaylor(a);
  CHECK(h.size() == 3);
  CHECK(h.at({0}) == 9);
  CHECK(h.at({1}) == 6);
  CHECK(h.at({2}) == 1);

  Polynomial xy = Polynomial::variable(2, 0) * Polynomial::variable(2, 1);
  std::vector<Rational> b{Rational(1), Rational(1)};
  auto h2 = xy.hasseTaylor(b);
  CHECK(h2.size() == 4);
  for (const auto& [alpha, c] : h2) CHECK(c == 1);

  Polynomial cubic = Polynomial::variable(1, 0).pow(3) - Polynomial::constant(1, Rational(2));
  std::vector<Rational> zero{Rational(0)};
  auto h3 = cubic.hasseTaylor(zero);
  CHECK(h3.size() == 2);
  CHECK(h3.at({0}) == -2);
  CHECK(h3.at({3}) == 1);
}

TEST_CASE("hasse taylor identity on random points") {
  std::mt19937_64 rng(5);
  Polynomial x1 = Polynomial::variable(2, 0);
  Polynomial x2 = Polynomial::variable(2, 1);
  Polynomial f = x1.pow(3).scaled(Rational(3, 5)) * x2 - x2.pow(2) + x1 * x2.scaled(Rational(7)) +
                 Polynomial::constant(2, Rational(-4, 9));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> a{randomRational(rng, 3), randomRational(rng, 3)};
    std::vector<Rational> h{randomRational(rng, 3), randomRational(rng, 3)};
    std::vector<Rational> ah{a[0] + h[0], a[1] + h[1]};
    Rational sum(0);
    for (const auto& [alpha, c] : f.hasseTaylor(a)) {
      Rational term = c;
      for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < alpha[i]; ++k) term *= h[i];
      }
      sum += term;
    }
    CHECK(sum == f.evaluate(ah));
    // First-order coefficients are the partial derivatives.
    auto taylor = f.hasseTaylor(a);
    CHECK(f.partial(0).evaluate(a) == (taylor.count({1, 0}) ? taylor.at({1, 0}) : Rational(0)));
  }
}

TEST_CASE("subdivide examples") {
  auto kids = Ball::unit(2, 1).subdivide();
  REQUIRE(kids.size() == 2);
  CHECK(kids[0] == Ball(2, 1, {Rational(0)}));
  CHECK(kids[1] == Ball(2, 1, {Rational(1)}));

  auto kids3 = Ball(3, 1, {Rational(1)}).subdivide();
  REQUIRE(kids3.size() == 3);
  CHECK(kids3[0].center()[0] == 1);
  CHECK(kids3[1].center()[0] == 4);
  CHECK(kids3[2].center()[0] == 7);
  for (const auto& k : kids3) CHECK(k.level() == 2);

  auto kids2d = Ball::unit(2, 2).subdivide();
  REQUIRE(kids2d.size() == 4);
  Rational total(0);
  for (const auto& k : kids2d) total += k.volume();
  CHECK(total == 1);
}

TEST_CASE("subdivide partitions and canonical form is idempotent") {
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L, 5L}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::uniform_int_distribution<long> lvl(-2, 3);
      Ball b(p, lvl(rng), {randomRational(rng, p), randomRational(rng, p)});
      CHECK(Ball(p, b.level(), b.center()) == b);
      auto kids = b.subdivide();
      Rational total(0);
      for (std::size_t i = 0; i < kids.size(); ++i) {
        total += kids[i].volume();
        CHECK(b.contains(kids[i]));
        CHECK(kids[i].parent() == b);
        for (std::size_t j = i + 1; j < kids.size(); ++j) CHECK_FALSE(kids[i] == kids[j]);
      }
      CHECK(total == b.volume());
      // A random point of b lies in exactly one child.
      std::vector<Rational> x = b.center();
      x[0] += powP(p, b.level()) * Rational(trial);
      x[1] += powP(p, b.level() + 1) * Rational(trial * 7);
      int hits = 0;
      for (const auto& k : kids) hits += k.contains(x) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("canonical centers reduce negative-valuation coordinates") {
  Ball b(3, 1, {Rational(1, 3) + Rational(6)});
  CHECK(b.center()[0] == Rational(1, 3));
  Ball c(3, -1, {Rational(5, 9)});
  CHECK(c.center()[0] == Rational(2, 9));
  CHECK(fracP(3, Rational(5, 9)) == Rational(5, 9));
  CHECK(fracP(3, Rational(2)) == 0);
  CHECK(fracP(5, Rational(1, 10)) == Rational(3, 5));  // 1/10 = 1/5 · 1/2, 1/2 ≡ 3 mod 5
}

TEST_CASE("multiplicative characters") {
  for (long p : {3L, 5L, 7L, 13L}) {
    auto chi = MultCharacter::quadratic(p);
    Cyclo sum;
    for (long u = 1; u < p; ++u) {
      sum += chi.value(u);
      for (long w = 1; w < p; ++w) CHECK(chi.value(u * w % p) == chi.value(u) * chi.value(w));
    }
    CHECK(sum.isZero());
    CHECK((chi * chi.conj()).isTrivial());
    CHECK(chi.ofAngular(Rational(0)).isZero());
  }
  MultCharacter quartic(13, 4, 1);
  CHECK(quartic.order() == 4);
  CHECK((quartic * quartic).order() == 2);
  CHECK_THROWS_AS(MultCharacter(7, 4, 1), Error);
  CHECK_THROWS_AS(MultCharacter::quadratic(2), Error);
}

TEST_CASE("cyclotomic arithmetic") {
  Cyclo z3 = Cyclo::root(3, 1);
  CHECK((z3 * z3 * z3) == Cyclo(1));
  CHECK((Cyclo(1) + z3 + z3 * z3).isZero());
  Cyclo z12 = Cyclo::root(12, 1);
  CHECK(z12 * z12 * z12 * z12 == z3);
  CHECK(std::abs(Cyclo::root(9, 2).toComplex() - std::polar(1.0, 4.0 * M_PI / 9.0)) < 1e-14);
  CHECK((z3 * z3.conj()) == Cyclo(1));
  Cyclo mixed = Cyclo(Rational(1, 3)) + Cyclo(Rational(2)) * Cyclo::root(9, 2);
  CHECK(Cyclo::parse(mixed.toString()) == mixed);
}

TEST_CASE("square roots of p inside cyclotomic fields") {
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    long m = p == 2 ? 8 : (p % 4 == 1 ? p : 4 * p);
    auto s = sqrtPInCyclotomic(p, m);
    REQUIRE(s.has_value());
    CHECK(*s * *s == Cyclo(p));
    CHECK(std::abs(s->toComplex() - std::sqrt(static_cast<double>(p))) < 1e-12);
  }
  CHECK_FALSE(sqrtPInCyclotomic(3, 9).has_value());
  CHECK_FALSE(sqrtPInCyclotomic(2, 4).has_value());
}

TEST_CASE("radical field arithmetic is exact and canonical") {
  AlgNum r = AlgNum::pPower(5, Rational(1, 2));
  CHECK(r * r == AlgNum(5, Cyclo(5)));
  CHECK(std::abs(r.toComplex() - std::sqrt(5.0)) < 1e-14);
  // √5 written through the Gauss sum equals the radical once ζ_5 is present.
  AlgNum gauss(5, *sqrtPInCyclotomic(5, 5));
  CHECK(gauss == r);
  AlgNum x = AlgNum(5, Cyclo(1)) - AlgNum::pPower(5, Rational(-3, 4));
  AlgNum inv = x.inverse();
  CHECK(x * inv == AlgNum(5, Cyclo(1)));
  CHECK(std::abs(inv.toComplex() - 1.0 / (1.0 - std::pow(5.0, -0.75))) < 1e-13);
  AlgNum q = AlgNum::pPower(2, Rational(3, 2));
  CHECK(q == AlgNum(2, Cyclo(2)) * AlgNum::pPower(2, Rational(1, 2)));
}
