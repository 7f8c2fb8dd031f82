#pragma once

// l-infinity ball arithmetic over the joint covariate-price space [0,1]^{d+1}.
//
// A point stores the d covariates first and the price last. Balls are closed.

#include <span>
#include <stdexcept>
#include <vector>

#include "tldp/rng.hpp"

namespace tldp {

using Point = std::vector<double>;

// Intervals shorter than this (in total) are treated as empty for relevance
// and sampling.
inline constexpr double kLengthTolerance = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateDomainError : public std::runtime_error {
 public:
  DegenerateDomainError() : std::runtime_error("degenerate domain") {}
};

struct Ball {
  Point center;
  double radius = 1.0;

  std::size_t covariate_dim() const { return center.size() - 1; }
  double price_center() const { return center.back(); }

  // The ball standing for all of Z: center (1/2, ..., 1/2), radius 1.
  static Ball root(std::size_t covariate_dim);
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise disjoint closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(Interval iv);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  double length() const;
  bool contains(double v) const;

  // Set union; overlapping or touching pieces are merged.
  void add(Interval iv);
  // Removes the closed interval iv; residue endpoints stay closed and
  // zero-length residues are dropped.
  void subtract(Interval iv);
  void subtract(const IntervalUnion& other);

  // Maps a draw in [0, 1) to a point of the union by inverse CDF over the
  // concatenated pieces.
  double at_fraction(double u) const;

 private:
  std::vector<Interval> parts_;
};

double linf_distance(std::span<const double> a, std::span<const double> b);

bool contains(const Ball& ball, std::span<const double> z);

// {p in [0,1] : (x, p) in ball}; x holds covariates only.
IntervalUnion price_slice(const Ball& ball, std::span<const double> x);

// Price slice of `ball` minus the slices of every strictly smaller ball in
// `active`.
IntervalUnion domain_slice(const Ball& ball, std::span<const Ball> active,
                           std::span<const double> x);

// Lebesgue-uniform draw from u. Throws DegenerateDomainError when the total
// length is within kLengthTolerance of zero.
double sample_uniform(const IntervalUnion& u, Rng& rng);
double sample_uniform(const IntervalUnion& u, double draw);

}  // namespace tldp
