#include "padicfs/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "padicfs/padic.hpp"

namespace padicfs {

namespace {

long ipowLong(long p, long k) {
  long r = 1;
  for (long i = 0; i < k; ++i) r *= p;
  return r;
}

std::mutex& plannerMutex() {
  static std::mutex m;
  return m;
}

GridFunction transform(const GridFunction& g, int sign) {
  const long side = g.side();
  std::vector<int> dims(g.n, static_cast<int>(side));
  GridFunction out{g.p, g.n, Resolution{g.res.N, g.res.M}, std::vector<Complex>(g.size())};
  std::vector<Complex> in = g.values;
  fftw_plan plan;
  {
    // The FFTW planner is not thread safe; execution is.
    std::lock_guard lock(plannerMutex());
    plan = fftw_plan_dft(g.n, dims.data(), reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.values.data()),
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(plannerMutex());
    fftw_destroy_plan(plan);
  }
  const double weight = std::pow(static_cast<double>(g.p), -static_cast<double>(g.res.N * g.n));
  for (auto& v : out.values) v *= weight;
  return out;
}

}  // namespace

long GridFunction::side() const { return ipowLong(p, res.M + res.N); }

std::vector<long> GridFunction::indexOf(std::size_t flat) const {
  std::vector<long> k(n);
  const auto s = static_cast<std::size_t>(side());
  for (int i = n - 1; i >= 0; --i) {
    k[i] = static_cast<long>(flat % s);
    flat /= s;
  }
  return k;
}

std::vector<Rational> GridFunction::pointOf(std::size_t flat) const {
  auto k = indexOf(flat);
  std::vector<Rational> x(n);
  const Rational scale = powP(p, -res.M);
  for (int i = 0; i < n; ++i) x[i] = scale * k[i];
  return x;
}

GridFunction toGrid(const ComplexSB& f, Resolution res) {
  if (res.M + res.N < 0) throw ResolutionError("resolution needs M + N >= 0");
  GridFunction g{f.p(), f.dimension(), res, {}};
  const long side = g.side();
  std::size_t total = 1;
  for (int i = 0; i < g.n; ++i) total *= static_cast<std::size_t>(side);
  g.values.assign(total, Complex(0.0, 0.0));
  const long p = f.p();
  for (const auto& [ball, c] : f.terms()) {
    bool fits = ball.level() >= -res.M && ball.level() <= res.N;
    for (const auto& a : ball.center()) {
      if (auto v = valuation(p, a); v && *v < -res.M) fits = false;
    }
    if (!fits) {
      throw ResolutionError("ball " + ball.toString() + " does not fit resolution (M=" +
                            std::to_string(res.M) + ", N=" + std::to_string(res.N) + ")");
    }
    // Cells in the ball: k_i ≡ p^M a_i mod p^{M+e}, free in the remaining N − e digits.
    const long stride = ipowLong(p, res.M + ball.level());
    const long count = ipowLong(p, res.N - ball.level());
    std::vector<long> base(g.n);
    for (int i = 0; i < g.n; ++i) {
      Rational scaled = ball.center()[i] * powP(p, res.M);
      base[i] = scaled.get_num().get_si();
    }
    std::vector<long> j(g.n, 0);
    while (true) {
      std::size_t flat = 0;
      for (int i = 0; i < g.n; ++i) {
        flat = flat * static_cast<std::size_t>(side) + static_cast<std::size_t>(base[i] + j[i] * stride);
      }
      g.values[flat] += c;
      int i = g.n - 1;
      while (i >= 0 && ++j[i] == count) {
        j[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return g;
}

ComplexSB fromGrid(const GridFunction& g) {
  std::vector<ComplexSB::Term> raw;
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if (g.values[flat] == Complex(0.0, 0.0)) continue;
    raw.emplace_back(Ball(g.p, g.res.N, g.pointOf(flat)), g.values[flat]);
  }
  return ComplexSB::fromRaw(g.p, g.n, std::move(raw));
}

GridFunction gridFourier(const GridFunction& g) { return transform(g, -1); }

GridFunction gridInverseFourier(const GridFunction& g) { return transform(g, +1); }

}  // namespace padicfs
