#pragma once

#include <vector>

#include "padicfs/padic.hpp"
#include "padicfs/sb_function.hpp"

namespace padicfs {

/// Dense samples of a function on (Z/p^{M+N})^n, index k ↔ representative p^{-M}·k, each
/// cell standing for the coset p^{-M}k + p^N Z_p^n. Row-major, first coordinate slowest.
struct GridFunction {
  long p = 2;
  int n = 1;
  Resolution res;
  std::vector<Complex> values;

  /// Cells per axis, p^{M+N}.
  long side() const;
  std::size_t size() const { return values.size(); }
  std::vector<long> indexOf(std::size_t flat) const;
  std::vector<Rational> pointOf(std::size_t flat) const;
};

/// Samples Φ on the grid; throws ResolutionError naming the first ball that does not fit.
GridFunction toGrid(const ComplexSB& f, Resolution res);
ComplexSB fromGrid(const GridFunction& g);

/// F on the grid: the DFT with kernel Ψ(−[x, ξ]) and cell weight p^{-Nn}; (M, N) ↦ (N, M).
GridFunction gridFourier(const GridFunction& g);
/// Inverse: kernel Ψ(+[x, ξ]), cell weight p^{-Nn} of the input grid.
GridFunction gridInverseFourier(const GridFunction& g);

class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace padicfs
