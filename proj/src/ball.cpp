#include "padicfs/ball.hpp"

#include "padicfs/padic.hpp"

namespace padicfs {

Ball::Ball(long p, long level, std::vector<Rational> center)
    : p_(p), level_(level), center_(std::move(center)) {
  if (center_.empty()) throw Error("ball dimension must be positive");
  for (auto& c : center_) c = reduceModPower(p_, c, level_);
}

Ball Ball::unit(long p, int n) { return centered(p, n, 0); }

Ball Ball::centered(long p, int n, long level) {
  return Ball(p, level, std::vector<Rational>(n, Rational(0)));
}

Rational Ball::volume() const { return powP(p_, -level_ * dimension()); }

bool Ball::contains(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dimension()) throw Error("point has wrong dimension");
  for (int i = 0; i < dimension(); ++i) {
    if (reduceModPower(p_, x[i], level_) != center_[i]) return false;
  }
  return true;
}

bool Ball::contains(const Ball& other) const {
  if (other.p_ != p_ || other.dimension() != dimension()) return false;
  return other.level_ >= level_ && contains(other.center_);
}

bool Ball::isCenteredAtZero() const {
  for (const auto& c : center_) {
    if (c != 0) return false;
  }
  return true;
}

Ball Ball::parent() const { return Ball(p_, level_ - 1, center_); }

Ball Ball::ancestor(long level) const {
  if (level > level_) throw Error("ancestor level must not exceed the ball level");
  return Ball(p_, level, center_);
}

std::vector<Ball> Ball::subdivide() const {
  const int n = dimension();
  const Rational step = powP(p_, level_);
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(p_);
  std::vector<Ball> children;
  children.reserve(count);
  std::vector<long> digits(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Rational> c(center_);
    for (int i = 0; i < n; ++i) c[i] += step * digits[i];
    children.emplace_back(p_, level_ + 1, std::move(c));
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < p_) break;
      digits[i] = 0;
    }
  }
  return children;
}

Ball Ball::translated(std::span<const Rational> shift) const {
  std::vector<Rational> c(center_);
  for (int i = 0; i < dimension(); ++i) c[i] += shift[i];
  return Ball(p_, level_, std::move(c));
}

std::string Ball::toString() const {
  std::string out;
  for (int i = 0; i < dimension(); ++i) {
    if (i) out += ",";
    out += padicfs::toString(center_[i]);
  }
  return out + "@" + std::to_string(level_);
}

std::strong_ordering operator<=>(const Ball& a, const Ball& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.dimension() <=> b.dimension(); c != 0) return c;
  if (auto c = a.level_ <=> b.level_; c != 0) return c;
  for (int i = 0; i < a.dimension(); ++i) {
    int c = cmp(a.center_[i], b.center_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace padicfs
