#include "tldp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tldp {

Ball Ball::root(std::size_t covariate_dim) {
  return Ball{Point(covariate_dim + 1, 0.5), 1.0};
}

IntervalUnion::IntervalUnion(Interval iv) {
  if (iv.lo <= iv.hi) parts_.push_back(iv);
}

double IntervalUnion::length() const {
  double total = 0.0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

bool IntervalUnion::contains(double v) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [v](const Interval& iv) { return iv.contains(v); });
}

void IntervalUnion::add(Interval iv) {
  if (iv.lo > iv.hi) return;
  std::vector<Interval> merged;
  merged.reserve(parts_.size() + 1);
  bool placed = false;
  for (const auto& cur : parts_) {
    if (cur.hi < iv.lo) {
      merged.push_back(cur);
    } else if (iv.hi < cur.lo) {
      if (!placed) {
        merged.push_back(iv);
        placed = true;
      }
      merged.push_back(cur);
    } else {
      iv.lo = std::min(iv.lo, cur.lo);
      iv.hi = std::max(iv.hi, cur.hi);
    }
  }
  if (!placed) merged.push_back(iv);
  parts_ = std::move(merged);
}

void IntervalUnion::subtract(Interval cut) {
  if (cut.lo > cut.hi || parts_.empty()) return;
  std::vector<Interval> out;
  out.reserve(parts_.size() + 1);
  for (const auto& cur : parts_) {
    if (cur.hi < cut.lo || cut.hi < cur.lo) {
      out.push_back(cur);
      continue;
    }
    if (cur.lo < cut.lo) out.push_back({cur.lo, cut.lo});
    if (cut.hi < cur.hi) out.push_back({cut.hi, cur.hi});
  }
  parts_ = std::move(out);
}

void IntervalUnion::subtract(const IntervalUnion& other) {
  for (const auto& iv : other.parts_) subtract(iv);
}

double IntervalUnion::at_fraction(double u) const {
  const double total = length();
  if (total <= kLengthTolerance) throw DegenerateDomainError();
  double target = std::clamp(u, 0.0, 1.0) * total;
  for (const auto& iv : parts_) {
    const double len = iv.length();
    if (target <= len) return iv.lo + target;
    target -= len;
  }
  return parts_.back().hi;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("linf_distance: dimension mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

bool contains(const Ball& ball, std::span<const double> z) {
  return linf_distance(ball.center, z) <= ball.radius;
}

IntervalUnion price_slice(const Ball& ball, std::span<const double> x) {
  const std::size_t d = ball.covariate_dim();
  if (x.size() != d) {
    throw DimensionError("price_slice: covariate has " +
                         std::to_string(x.size()) + " entries, ball expects " +
                         std::to_string(d));
  }
  const std::span<const double> cov(ball.center.data(), d);
  if (linf_distance(cov, x) > ball.radius) return {};
  const double lo = std::max(0.0, ball.price_center() - ball.radius);
  const double hi = std::min(1.0, ball.price_center() + ball.radius);
  return IntervalUnion(Interval{lo, hi});
}

IntervalUnion domain_slice(const Ball& ball, std::span<const Ball> active,
                           std::span<const double> x) {
  IntervalUnion slice = price_slice(ball, x);
  for (const auto& other : active) {
    if (slice.empty()) break;
    if (other.radius < ball.radius) slice.subtract(price_slice(other, x));
  }
  return slice;
}

double sample_uniform(const IntervalUnion& u, double draw) {
  return u.at_fraction(draw);
}

double sample_uniform(const IntervalUnion& u, Rng& rng) {
  if (u.length() <= kLengthTolerance) throw DegenerateDomainError();
  return u.at_fraction(rng.uniform());
}

}  // namespace tldp
