#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "padicfs/rational.hpp"

namespace padicfs {

/// The coset center + p^level Z_p^n, with a canonical center (every coordinate the unique
/// representative in Z[1/p] ∩ [0, p^level)). Two balls are equal iff their canonical forms are.
class Ball {
 public:
  Ball(long p, long level, std::vector<Rational> center);

  /// Z_p^n.
  static Ball unit(long p, int n);
  /// p^level Z_p^n.
  static Ball centered(long p, int n, long level);

  long p() const { return p_; }
  int dimension() const { return static_cast<int>(center_.size()); }
  long level() const { return level_; }
  const std::vector<Rational>& center() const { return center_; }

  /// p^{-level·n}.
  Rational volume() const;
  bool contains(std::span<const Rational> x) const;
  bool contains(const Ball& other) const;
  bool isCenteredAtZero() const;
  /// The ball one level up containing this one.
  Ball parent() const;
  /// The ancestor at a coarser (smaller or equal) level.
  Ball ancestor(long level) const;

  /// The p^n level+1 children, ordered lexicographically in the new digit (first coordinate
  /// most significant).
  std::vector<Ball> subdivide() const;

  /// Translates by a vector.
  Ball translated(std::span<const Rational> shift) const;

  std::string toString() const;

  friend bool operator==(const Ball&, const Ball&) = default;
  friend std::strong_ordering operator<=>(const Ball& a, const Ball& b);

 private:
  long p_;
  long level_;
  std::vector<Rational> center_;
};

}  // namespace padicfs
