#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "padicfs/fundsol.hpp"
#include "test_support.hpp"

using namespace padicfs;

namespace {

Polynomial X(int n, int i) { return Polynomial::variable(n, i); }
Polynomial K(int n, long c) { return Polynomial::constant(n, Rational(c)); }

AlgNum num(long p, const Rational& q) { return AlgNum(p, Cyclo(q)); }

/// ∫_B |x|^{α−1} dx over Q_p.
AlgNum kernelOnBall(const Ball& b, const Rational& alpha) {
  const long p = b.p();
  const long e = b.level();
  if (b.contains(std::vector<Rational>{Rational(0)})) {
    return num(p, 1 - powP(p, -1)) * AlgNum::pPower(p, -alpha * e) *
           (num(p, 1) - AlgNum::pPower(p, -alpha)).inverse();
  }
  const long v = *valuation(p, b.center()[0]);
  return AlgNum::pPower(p, Rational(-e)) * AlgNum::pPower(p, -(alpha - 1) * v);
}

/// ∫Φ(x)|x|^{α−1}dx / Γ_p(α), Γ_p(α) = (1 − p^{α−1})/(1 − p^{−α}).
AlgNum rieszPairing(const ExactSB& phi, const Rational& alpha) {
  const long p = phi.p();
  AlgNum total(p, Cyclo());
  for (const auto& [ball, c] : phi.terms()) total += AlgNum(p, c) * kernelOnBall(ball, alpha);
  return total * (num(p, 1) - AlgNum::pPower(p, -alpha)) *
         (num(p, 1) - AlgNum::pPower(p, alpha - 1)).inverse();
}

struct CatalogEntry {
  long p;
  Polynomial f;
};

std::vector<CatalogEntry> divisionCatalog() {
  std::vector<CatalogEntry> out;
  for (long p : {2L, 3L, 5L}) {
    for (int m = 1; m <= 4; ++m) out.push_back({p, X(1, 0).pow(m)});
    out.push_back({p, X(2, 0) * X(2, 1)});
  }
  for (long p : {3L, 7L}) out.push_back({p, X(2, 0).pow(2) + X(2, 1).pow(2)});
  out.push_back({3, X(1, 0).pow(2) + K(1, 1)});
  return out;
}

/// ĝ(ξ)Ψ([x, ξ]) for ĝ = 1_{Z_p^n}, on level-M cells.
ComplexSB modulatedUnit(long p, int n, long M, const std::vector<Rational>& x) {
  std::vector<ComplexSB::Term> raw;
  const long side = static_cast<long>(std::llround(std::pow(p, M)));
  long cells = 1;
  for (int i = 0; i < n; ++i) cells *= side;
  for (long k = 0; k < cells; ++k) {
    std::vector<Rational> center(n);
    Rational phase(0);
    long rest = k;
    for (int i = 0; i < n; ++i) {
      center[i] = Rational(rest % side);
      rest /= side;
      phase += center[i] * x[i];
    }
    raw.emplace_back(Ball(p, M, center), CoefOps<Complex>::psi(p, phase));
  }
  return ComplexSB::fromRaw(p, n, std::move(raw));
}

}  // namespace

TEST_CASE("pairing with T") {
  for (long p : {2L, 3L, 5L}) {
    const ExactSB unit = ExactSB::indicator(Ball::unit(p, 1));
    PairingValue half = pairT(SymbolSpec{X(1, 0), Rational(1, 2)}, unit);
    REQUIRE(half.exact);
    CHECK(half.poleOrder == 0);
    CHECK(half.exact->isConstant());
    AlgNum expected = num(p, 1 - powP(p, -1)) * (num(p, 1) - AlgNum::pPower(p, Rational(-1, 2))).inverse();
    CHECK(half.exact->constantTerm() == expected);
    CHECK(std::abs(half.value - expected.toComplex()) < 1e-12);

    PairingValue one = pairT(SymbolSpec{X(1, 0), Rational(1)}, unit);
    CHECK(one.poleOrder == 1);
    CHECK(*one.exact == LambdaPoly(num(p, (1 - powP(p, -1)) / 2)));

    PairingValue shifted = pairT(SymbolSpec{X(1, 0), Rational(1)},
                                 ExactSB::indicator(Ball(p, 1, {Rational(1)})));
    CHECK(shifted.poleOrder == 0);
    CHECK(*shifted.exact == LambdaPoly(num(p, powP(p, -1))));
  }
}

TEST_CASE("numeric exponent pairs by evaluation") {
  SymbolSpec sym{X(1, 0), Rational(1), Complex(0.5, 0.0)};
  PairingValue v = pairT(sym, ExactSB::indicator(Ball::unit(3, 1)));
  CHECK_FALSE(v.exact);
  CHECK(v.warning.empty());
  CHECK(std::abs(v.value - (1.0 - 1.0 / 3) / (1.0 - std::pow(3.0, -0.5))) < 1e-12);
  SymbolSpec near{X(1, 0), Rational(1), Complex(1.0 + 1e-9, 0.0)};
  CHECK_FALSE(pairT(near, ExactSB::indicator(Ball::unit(3, 1))).warning.empty());
}

TEST_CASE("uncertified pairing reports the undecided balls") {
  SymbolSpec sym{X(2, 0).pow(2) - X(2, 1).pow(3), Rational(1)};
  try {
    pairT(sym, ExactSB::indicator(Ball::unit(2, 2)), 3);
    FAIL("expected an uncertified error");
  } catch (const UncertifiedError& e) {
    CHECK_FALSE(e.undecided.empty());
  }
}

TEST_CASE("pairing is linear") {
  std::mt19937_64 rng(11);
  for (const auto& [p, f] : divisionCatalog()) {
    const int n = f.dimension();
    SymbolSpec sym{f, Rational(3, 2)};
    ExactSB a = testing::randomExactSB(rng, p, n, 4, 0, 2);
    ExactSB b = testing::randomExactSB(rng, p, n, 4, 0, 2);
    const Cyclo ca(Rational(2, 3)), cb(Rational(-5));
    LambdaPoly lhs = *pairT(sym, a.scaled(ca) + b.scaled(cb)).exact;
    LambdaPoly rhs = LambdaPoly(AlgNum(p, ca)) * *pairT(sym, a).exact +
                     LambdaPoly(AlgNum(p, cb)) * *pairT(sym, b).exact;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pairing with E") {
  for (long p : {2L, 3L, 5L}) {
    SymbolSpec sym{X(1, 0), Rational(1, 2)};
    const ExactSB unit = ExactSB::indicator(Ball::unit(p, 1));
    CHECK(*pairE(sym, unit).exact == *pairT(sym, unit).exact);
    CHECK(pairE(sym, ExactSB(p, 1)).exact->isZero());

    // Φ = 1_{pZ_p} − p^{-1}1_{Z_p} pairs to (1 − p^{-1})p^{-α} against the Riesz kernel.
    const ExactSB phi = ExactSB::indicator(Ball::centered(p, 1, 1)) -
                        ExactSB::indicator(Ball::unit(p, 1), Cyclo(powP(p, -1)));
    for (Rational alpha : {Rational(1, 2), Rational(2), Rational(3), Rational(5, 2)}) {
      SymbolSpec s{X(1, 0), alpha};
      PairingValue v = pairE(s, phi);
      REQUIRE(v.exact);
      REQUIRE(v.exact->isConstant());
      AlgNum closed = num(p, 1 - powP(p, -1)) * AlgNum::pPower(p, -alpha);
      CHECK(v.exact->constantTerm() == closed);
      CHECK(rieszPairing(phi, alpha) == closed);
    }
  }
}

TEST_CASE("E matches the Riesz kernel on mean-zero functions") {
  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L}) {
    for (Rational alpha : {Rational(1, 2), Rational(2), Rational(3)}) {
      for (int trial = 0; trial < 4; ++trial) {
        ExactSB phi = testing::randomMeanZeroSB(rng, p, 1, 6, -1, 3);
        PairingValue v = pairE(SymbolSpec{X(1, 0), alpha}, phi);
        REQUIRE(v.exact);
        REQUIRE(v.exact->isConstant());
        CHECK(v.exact->constantTerm() == rieszPairing(phi, alpha));
      }
    }
  }
}

TEST_CASE("division examples") {
  for (long p : {2L, 3L, 5L}) {
    DivisionReport r = verifyDivision(SymbolSpec{X(1, 0), Rational(1)}, ExactSB::indicator(Ball::unit(p, 1)));
    CHECK(r.ok);
    CHECK(r.removedPoles == 1);
    CHECK(r.left == num(p, 1));
    CHECK(std::abs(r.leftValue - 1.0) < 1e-14);

    DivisionReport q = verifyDivision(SymbolSpec{X(2, 0) * X(2, 1), Rational(3, 2)},
                                      ExactSB::indicator(Ball::unit(p, 2)));
    CHECK(q.ok);
    CHECK(q.right == Cyclo(1));
  }
}

TEST_CASE("division identity over the catalog") {
  std::mt19937_64 rng(7);
  for (const auto& [p, f] : divisionCatalog()) {
    const int n = f.dimension();
    for (Rational beta : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
      SymbolSpec sym{f, beta};
      for (int trial = 0; trial < 3; ++trial) {
        ExactSB phi = testing::randomExactSB(rng, p, n, 8, 0, n == 1 ? 4 : 2);
        DivisionReport r = verifyDivision(sym, phi);
        INFO(f.toString(), " p=", p, " beta=", beta.get_str(), " ", r.detail);
        CHECK(r.ok);
        CHECK(std::abs(r.leftValue - r.rightValue) < 1e-9);
      }
    }
  }
}

TEST_CASE("twisted division") {
  for (long p : {3L, 5L}) {
    const MultCharacter chi = MultCharacter::quadratic(p);
    for (Rational beta : {Rational(1, 2), Rational(1)}) {
      SymbolSpec sym{X(1, 0), beta, std::nullopt, chi};
      DivisionReport r = verifyDivision(sym, ExactSB::indicator(Ball::unit(p, 1)));
      CHECK(r.ok);
      CHECK(r.left == num(p, 1));
      // The twisted zeta of 1_{Z_p} vanishes, so there is no pole to remove.
      CHECK(r.removedPoles == 0);
    }
  }
  // An order-4 character does not square to the trivial one: only the compensated pairing holds.
  const MultCharacter quartic(5, 4, 1);
  SymbolSpec sym{X(1, 0), Rational(1), std::nullopt, quartic};
  const ExactSB phi = ExactSB::indicator(Ball::unit(5, 1));
  CHECK(verifyDivision(sym, phi, TwistConvention::Compensated).ok);
  DivisionReport literal = verifyDivision(sym, phi, TwistConvention::Literal);
  CHECK_FALSE(literal.ok);
  CHECK(literal.left.isZero());
}

TEST_CASE("solve of zero data") {
  SymbolSpec sym{X(2, 0).pow(2) + X(2, 1).pow(2), Rational(1)};
  GridFunction u = solve(sym, ExactSB(3, 2), Resolution{1, 1});
  CHECK(u.size() == 81);
  for (const Complex& v : u.values) CHECK(v == Complex(0.0, 0.0));
}

TEST_CASE("solve samples equal the per-point pairing") {
  const long p = 3, M = 2;
  SymbolSpec sym{X(2, 0).pow(2) + X(2, 1).pow(2), Rational(1)};
  const ExactSB g = ExactSB::indicator(Ball::unit(p, 2));
  GridFunction u = solve(sym, g, Resolution{M, 0});
  REQUIRE(u.size() == 81);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = u.pointOf(i);
    Complex direct = pairT(sym, modulatedUnit(p, 2, M, x)).value;
    CHECK(std::abs(u.values[i] - direct) < 1e-10);
  }
}

TEST_CASE("solve commutes with translation") {
  const long p = 3;
  SymbolSpec sym{X(1, 0).pow(2) + K(1, 1), Rational(1, 2)};
  const ExactSB g = ExactSB::indicator(Ball::centered(p, 1, 1)) +
                    ExactSB::indicator(Ball(p, 2, {Rational(5)}), Cyclo(Rational(-2)));
  const std::vector<Rational> a{Rational(4)};
  ComplexSB u = solveOnWindow(sym, g, 2);
  ComplexSB v = solveOnWindow(sym, g.translated(a), 2);
  for (long k = 0; k < 81; ++k) {
    Rational x(k, 9);
    x.canonicalize();
    CHECK(std::abs(v.evaluate(std::vector<Rational>{x}) - u.evaluate(std::vector<Rational>{x - a[0]})) < 1e-12);
  }
}

TEST_CASE("round trip on a certified symbol is exact") {
  SymbolSpec sym{X(1, 0).pow(2) + K(1, 1), Rational(1)};
  const ExactSB g = ExactSB::indicator(Ball::unit(3, 1));
  ComplexSB u = solveOnWindow(sym, g, 2);
  CHECK(testing::maxAbsDiff(u, toComplexSB(g)) < 1e-15);
  ApplyReport back = applyOperator(sym, u, 2);
  CHECK(back.exact);
  CHECK(testing::maxAbsDiff(back.result, toComplexSB(g)) < 1e-15);
}

TEST_CASE("round trip through the regularized core") {
  const long p = 3, M = 10;
  SymbolSpec sym{X(2, 0).pow(2) + X(2, 1).pow(2), Rational(1)};
  const ExactSB g = ExactSB::indicator(Ball::unit(p, 2));
  ComplexSB u = solveOnWindow(sym, g, M);
  ApplyReport back = applyOperator(sym, u, M);
  const Ball interior = Ball::centered(p, 2, -(M - 1));
  double residual = 0.0;
  const ComplexSB diff = back.result - toComplexSB(g);
  for (const auto& [ball, c] : diff.terms()) {
    if (interior.contains(ball) || ball.contains(interior)) residual = std::max(residual, std::abs(c));
  }
  CHECK(residual < 1e-8);
}
