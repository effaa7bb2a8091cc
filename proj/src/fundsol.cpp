#include "padicfs/fundsol.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace padicfs {

namespace {

std::optional<MultCharacter> nontrivial(const std::optional<MultCharacter>& chi) {
  if (chi && chi->isTrivial()) return std::nullopt;
  return chi;
}

void requireCertified(const std::vector<UndecidedBall>& undecided) {
  if (undecided.empty()) return;
  std::string what = "zeta function not certified on " + std::to_string(undecided.size()) +
                     " ball(s), first " + undecided.front().ball.toString();
  throw UncertifiedError(what, undecided);
}

/// ⟨T, 1_B⟩ for the given twist: exact Laurent constant when β is rational.
PairingValue pairBall(const SymbolSpec& sym, const RatFunc& z) {
  PairingValue out;
  if (sym.hasExactBeta()) {
    LaurentSeries L = laurentExpand(z, sym.beta, 0);
    out.exact = L.coefficient(0);
    out.value = out.exact->render(z.p());
    out.poleOrder = std::max(0, -L.order);
    return out;
  }
  const Complex beta = sym.betaValue();
  for (const auto& [factor, k] : z.denominator()) {
    const double distance = std::abs(-beta.real() + static_cast<double>(factor.a) / factor.b);
    if (distance < 1e-6) out.warning = "s = -beta lies within 1e-6 of the pole line of " + factor.toString(z.p());
  }
  out.value = z.evaluate(-beta);
  return out;
}

}  // namespace

PairingValue pairT(const SymbolSpec& sym, const ExactSB& phi, int depth) {
  sym.validate();
  ZetaResult z = zetaOf(sym.f, sym.chi, phi, depth);
  requireCertified(z.undecided);
  return pairBall(sym, z.value);
}

PairingValue pairT(const SymbolSpec& sym, const ComplexSB& phi, int depth) {
  sym.validate();
  PairingValue out;
  out.value = Complex(0.0, 0.0);
  for (const auto& [ball, c] : phi.terms()) {
    ZetaResult z = zetaBall(sym.f, sym.chi, ball, depth);
    requireCertified(z.undecided);
    PairingValue part = pairBall(sym, z.value);
    out.value += c * part.value;
    out.poleOrder = std::max(out.poleOrder, part.poleOrder);
    if (out.warning.empty()) out.warning = part.warning;
  }
  return out;
}

PairingValue pairE(const SymbolSpec& sym, const ExactSB& phi, int depth) {
  return pairT(sym, inverseFourier(phi), depth);
}

PairingValue pairE(const SymbolSpec& sym, const ComplexSB& phi, int depth) {
  return pairT(sym, inverseFourier(phi), depth);
}

namespace {

/// Spectral side of u on the window p^{-M}Z^n: T·ĝ averaged over level-M cells, kept at
/// coarser levels where the unit-ball certificate makes T a constant multiple of Haar measure.
struct Spectrum {
  const SymbolSpec& sym;
  std::optional<MultCharacter> pairing;  // conjugate twist
  long M;
  int depth;
  std::vector<ComplexSB::Term> terms;

  void visit(const Ball& b, Complex c) {
    const long p = b.p();
    const auto& f = sym.f;
    if (auto unit = certifyUnitBall(f, b, pairing.has_value());
        unit && (!pairing || unit->angularConstant)) {
      // T = χ̄(ac f)|f|^{-β} dξ on b.
      Complex tau = std::exp(static_cast<double>(unit->v) * sym.betaValue() * std::log(static_cast<double>(p)));
      if (pairing) tau *= pairing->ofAngular(f.evaluate(b.center())).toComplex();
      terms.emplace_back(b, c * tau);
      return;
    }
    if (b.level() < M) {
      for (const Ball& child : b.subdivide()) visit(child, c);
      return;
    }
    ZetaResult z = zetaBall(f, pairing, b, depth);
    requireCertified(z.undecided);
    PairingValue t = pairBall(sym, z.value);
    terms.emplace_back(b, c * t.value / toDouble(b.volume()));
  }
};

template <class C>
ComplexSB spectrum(const SymbolSpec& sym, const SBFunction<C>& g, long M, int depth) {
  sym.validate();
  if (sym.f.dimension() != g.dimension()) throw Error("symbol and data dimensions differ");
  Spectrum s{sym, nontrivial(sym.chi), M, depth, {}};
  if (s.pairing) s.pairing = s.pairing->conj();
  const SBFunction<C> ghat = fourier(g);
  for (const auto& [ball, c] : ghat.terms()) s.visit(ball, CoefOps<C>::toComplex(c));
  return ComplexSB::fromRaw(g.p(), g.dimension(), std::move(s.terms));
}

/// f·1_W for the centered window W = p^{-M}Z^n.
ComplexSB restrictToWindow(const ComplexSB& f, long M) {
  const Ball window = Ball::centered(f.p(), f.dimension(), -M);
  std::vector<ComplexSB::Term> kept;
  for (const auto& [ball, c] : f.terms()) {
    if (window.contains(ball)) {
      kept.emplace_back(ball, c);
    } else if (ball.contains(window)) {
      kept.emplace_back(window, c);
    }
  }
  return ComplexSB::fromRaw(f.p(), f.dimension(), std::move(kept));
}

}  // namespace

template <class C>
ComplexSB solveOnWindow(const SymbolSpec& sym, const SBFunction<C>& g, long M, int depth) {
  return restrictToWindow(inverseFourier(spectrum(sym, g, M, depth)), M);
}

template <class C>
GridFunction solve(const SymbolSpec& sym, const SBFunction<C>& g, Resolution window, int depth) {
  ComplexSB u = solveOnWindow(sym, g, window.M, depth);
  GridFunction out{g.p(), g.dimension(), window, {}};
  const long side = out.side();
  std::size_t total = 1;
  for (int i = 0; i < g.dimension(); ++i) total *= static_cast<std::size_t>(side);
  out.values.resize(total);
  // u is read-only from here on; points are split into contiguous blocks per worker.
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, total / 256));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w * total / workers; i < (w + 1) * total / workers; ++i) {
        out.values[i] = u.evaluate(out.pointOf(i));
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

template GridFunction solve(const SymbolSpec&, const SBFunction<Cyclo>&, Resolution, int);
template GridFunction solve(const SymbolSpec&, const SBFunction<Complex>&, Resolution, int);
template ComplexSB solveOnWindow(const SymbolSpec&, const SBFunction<Cyclo>&, long, int);
template ComplexSB solveOnWindow(const SymbolSpec&, const SBFunction<Complex>&, long, int);

DivisionReport verifyDivision(const SymbolSpec& sym, const ExactSB& phi, TwistConvention convention,
                              int depth) {
  sym.validate();
  DivisionReport report;
  const auto chi = nontrivial(sym.chi);
  std::optional<MultCharacter> product;
  if (chi) {
    MultCharacter prod = convention == TwistConvention::Compensated ? chi->conj() * *chi : *chi * *chi;
    product = nontrivial(prod);
  }
  ZetaResult twisted = zetaOf(sym.f, chi, phi, depth);
  requireCertified(twisted.undecided);
  if (sym.hasExactBeta()) {
    report.removedPoles = std::max(0, -laurentExpand(twisted.value, sym.beta, 0).order);
  }
  ZetaResult shifted = zetaOf(sym.f, product, phi, depth);
  requireCertified(shifted.undecided);
  report.right = phi.integrate();
  report.rightValue = report.right.toComplex();
  // Engine denominators have a ≥ 1, so nothing vanishes at s' = 0; the expansion confirms it.
  LaurentSeries at0 = laurentExpand(shifted.value, Rational(0), 0);
  if (at0.order < 0) {
    report.detail = "pole of order " + std::to_string(-at0.order) + " at s' = 0";
    report.left = AlgNum(phi.p(), Cyclo());
    report.leftValue = Complex(NAN, NAN);
    return report;
  }
  LambdaPoly c0 = at0.order == 0 ? at0.coefficient(0) : LambdaPoly();
  if (!c0.isConstant()) {
    report.detail = "constant term depends on ln p: " + c0.toString();
    report.leftValue = c0.render(phi.p());
    return report;
  }
  report.left = c0.isZero() ? AlgNum(phi.p(), Cyclo()) : c0.constantTerm();
  report.leftValue = report.left.toComplex();
  report.ok = report.left == AlgNum(phi.p(), report.right);
  if (!report.ok) report.detail = "left " + report.left.toString() + " differs from right " + report.right.toString();
  return report;
}

}  // namespace padicfs
