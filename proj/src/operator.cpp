#include "padicfs/operator.hpp"

#include <cmath>

#include "padicfs/grid.hpp"
#include "padicfs/padic.hpp"
#include "padicfs/zeta.hpp"

namespace padicfs {

void SymbolSpec::validate() const {
  if (betaValue().real() <= 0) throw Error("symbol exponent needs Re(beta) > 0");
  if (f.isZero()) throw Error("symbol polynomial is zero");
}

namespace {

/// p^q exactly when q is an integer.
std::optional<Cyclo> exactPower(long p, const Rational& q) {
  if (q.get_den() != 1) return std::nullopt;
  return Cyclo(powP(p, q.get_num().get_si()));
}

Complex complexPower(long p, Complex exponent) {
  return std::exp(exponent * std::log(static_cast<double>(p)));
}

template <class C>
struct Applier {
  const SymbolSpec& sym;
  long p;
  bool exactCoefficients;
  std::vector<ExactSB::Term> exactTerms;
  std::vector<ComplexSB::Term> terms;
  std::vector<ComplexSB::Term> multiplier;
  bool certified = true;
  double err2 = 0.0;

  void record(const Ball& b, const C& c, Complex m, const std::optional<Cyclo>& exact) {
    const Complex cc = CoefOps<C>::toComplex(c);
    terms.emplace_back(b, cc * m);
    multiplier.emplace_back(b, m);
    if constexpr (std::is_same_v<C, Cyclo>) {
      if (exactCoefficients && exact) {
        exactTerms.emplace_back(b, c * *exact);
      } else {
        exactCoefficients = false;
      }
    }
  }

  void visit(const Ball& b, const C& c, long finest) {
    const Complex beta = sym.betaValue();
    const auto& f = sym.f;
    if (auto unit = certifyUnitBall(f, b, sym.chi.has_value());
        unit && (!sym.chi || unit->angularConstant)) {
      Complex m = complexPower(p, -static_cast<double>(unit->v) * beta);
      std::optional<Cyclo> exact;
      if (sym.hasExactBeta()) exact = exactPower(p, -sym.beta * unit->v);
      if (sym.chi) {
        Cyclo ch = sym.chi->ofAngular(f.evaluate(b.center()));
        m *= ch.toComplex();
        if (exact) *exact *= ch;
      }
      record(b, c, m, exact);
      return;
    }
    if (b.level() < finest) {
      for (const Ball& child : b.subdivide()) visit(child, c, finest);
      return;
    }
    certified = false;
    const double vol = toDouble(b.volume());
    ZetaResult z = zetaBall(f, sym.chi, b);
    Complex integral = z.value.evaluate(beta);
    const bool real = !sym.chi && beta.imag() == 0.0;
    for (const auto& u : z.undecided) {
      if (real) integral += 0.5 * toDouble(u.ball.volume()) * std::pow(u.supBound, beta.real());
    }
    const double osc = (real ? 1.0 : 2.0) * std::pow(supBound(f, b), beta.real());
    err2 += std::norm(CoefOps<C>::toComplex(c)) * osc * osc * vol;
    record(b, c, integral / vol, std::nullopt);
  }
};

/// Per-ball inverse transform, or the dense grid DFT when that is cheaper.
ComplexSB invert(const ComplexSB& g) {
  if (g.isZero()) return g;
  const long p = g.p();
  const int n = g.dimension();
  const Resolution r = g.resolution();
  const double cells = std::pow(static_cast<double>(p), static_cast<double>((r.M + r.N) * n));
  double perBall = 0.0;
  for (const auto& [ball, c] : g.terms()) {
    long w = ball.level();
    for (const Rational& x : ball.center()) {
      if (x != 0) w = std::min(w, *valuation(p, x));
    }
    perBall += std::pow(static_cast<double>(p), static_cast<double>((ball.level() - w) * n));
  }
  if (perBall <= 4.0 * cells || cells > 1 << 24) return inverseFourier(g);
  return fromGrid(gridInverseFourier(toGrid(g, r)));
}

template <class C>
ApplyReport finish(Applier<C>& a, long p, int n) {
  ApplyReport report{invert(ComplexSB::fromRaw(p, n, std::move(a.terms))), std::nullopt,
                     ComplexSB::fromRaw(p, n, std::move(a.multiplier)), a.certified, std::sqrt(a.err2)};
  if constexpr (std::is_same_v<C, Cyclo>) {
    if (a.exactCoefficients) {
      report.exactResult = inverseFourier(ExactSB::fromRaw(p, n, std::move(a.exactTerms)));
      report.result = toComplexSB(*report.exactResult);
    }
  }
  if (report.exact) report.l2ErrorBound = 0.0;
  return report;
}

}  // namespace

template <class C>
ApplyReport applyOperator(const SymbolSpec& sym, const SBFunction<C>& phi, int depth) {
  sym.validate();
  if (sym.f.dimension() != phi.dimension()) throw Error("symbol and test function dimensions differ");
  const long p = phi.p();
  const SBFunction<C> fphi = fourier(phi);
  Applier<C> a{sym, p, std::is_same_v<C, Cyclo> && sym.hasExactBeta(), {}, {}, {}};
  for (const auto& [ball, c] : fphi.terms()) a.visit(ball, c, depth);
  return finish(a, p, phi.dimension());
}

namespace {

template <class C>
ApplyReport vladimirov(const std::optional<Rational>& exactAlpha, Complex alpha,
                       const SBFunction<C>& phi, int depth) {
  if (alpha.real() <= 0) throw Error("symbol exponent needs Re(beta) > 0");
  if (phi.dimension() != 1) throw Error("the Vladimirov operator acts on functions of one variable");
  const long p = phi.p();
  SymbolSpec sym{Polynomial::variable(1, 0), exactAlpha.value_or(Rational(1)),
                 exactAlpha ? std::nullopt : std::optional<Complex>(alpha), std::nullopt};
  Applier<C> a{sym, p, std::is_same_v<C, Cyclo> && exactAlpha.has_value(), {}, {}, {}};
  const double q = 1.0 / static_cast<double>(p);
  const SBFunction<C> fphi = fourier(phi);
  for (const auto& [ball, c] : fphi.terms()) {
    if (!ball.isCenteredAtZero()) {
      a.visit(ball, c, ball.level());
      continue;
    }
    // c·|ξ|^α on p^e Z_p = Σ_k c p^{-kα}(1_{p^k} − 1_{p^{k+1}}) + c·avg·1_{p^{e+D}}, shells
    // written as nested centered balls.
    const long e = ball.level();
    const long core = std::max(e, static_cast<long>(depth));
    for (long k = e; k < core; ++k) {
      Complex m = complexPower(p, -static_cast<double>(k) * alpha);
      std::optional<Cyclo> exact;
      if (exactAlpha) exact = exactPower(p, -*exactAlpha * k);
      a.record(Ball::centered(p, 1, k), c, m, exact);
      std::optional<Cyclo> negated;
      if (exact) negated = -*exact;
      a.record(Ball::centered(p, 1, k + 1), c, -m, negated);
    }
    // (1/vol)∫_{p^m Z_p}|ξ|^α dξ = (1 − p^{-1}) p^{-mα} / (1 − p^{-1-α}).
    Complex avg = (1.0 - q) * complexPower(p, -static_cast<double>(core) * alpha) /
                  (1.0 - complexPower(p, -1.0 - alpha));
    std::optional<Cyclo> exactAvg;
    if (exactAlpha && exactAlpha->get_den() == 1) {
      const long al = exactAlpha->get_num().get_si();
      exactAvg = Cyclo((1 - powP(p, -1)) * powP(p, -core * al) / (1 - powP(p, -1 - al)));
    }
    a.record(Ball::centered(p, 1, core), c, avg, exactAvg);
    a.certified = false;
    const double osc = (alpha.imag() == 0.0 ? 1.0 : 2.0) * std::pow(q, static_cast<double>(core) * alpha.real());
    a.err2 += std::norm(CoefOps<C>::toComplex(c)) * osc * osc * std::pow(q, static_cast<double>(core));
  }
  return finish(a, p, 1);
}

}  // namespace

template <class C>
ApplyReport applyVladimirov(const Rational& alpha, const SBFunction<C>& phi, int depth) {
  return vladimirov(std::optional<Rational>(alpha), Complex(toDouble(alpha), 0.0), phi, depth);
}

template <class C>
ApplyReport applyVladimirov(Complex alpha, const SBFunction<C>& phi, int depth) {
  return vladimirov<C>(std::nullopt, alpha, phi, depth);
}

template ApplyReport applyOperator(const SymbolSpec&, const SBFunction<Cyclo>&, int);
template ApplyReport applyOperator(const SymbolSpec&, const SBFunction<Complex>&, int);
template ApplyReport applyVladimirov(const Rational&, const SBFunction<Cyclo>&, int);
template ApplyReport applyVladimirov(const Rational&, const SBFunction<Complex>&, int);
template ApplyReport applyVladimirov(Complex, const SBFunction<Cyclo>&, int);
template ApplyReport applyVladimirov(Complex, const SBFunction<Complex>&, int);

}  // namespace padicfs
