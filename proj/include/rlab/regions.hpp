#pragma once

// Finite-measure regions of R^n (n = 1, 2, 3) with exact Lebesgue measure.
//
// Every shape is open: B_r(c) = {|x - c| < r}, intervals and boxes exclude
// their endpoints/faces, annuli exclude both spheres. Boundaries have
// measure zero, so integrals never see the convention.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rlab/rng.hpp"

namespace rlab {

using Point = std::vector<double>;

inline constexpr int kMaxDimension = 3;

class Region;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// B_{r_out}(center) minus the closed ball of radius r_in.
struct Annulus {
  Point center;
  double r_in = 0.0;
  double r_out = 0.0;
};

struct Box {
  Point lo;
  Point hi;
};

struct DisjointUnion {
  std::vector<Region> parts;
};

/// outer \ hole, with hole certified to lie inside outer. Carries the
/// off-center punctured balls that the kernel constructions need.
struct Difference {
  std::shared_ptr<const Region> outer;
  std::shared_ptr<const Region> hole;
};

enum class Shape { Interval, Ball, Annulus, Box, Union, Difference };

class Region {
 public:
  static Region interval(double lo, double hi);
  static Region ball(Point center, double radius);
  static Region annulus(Point center, double r_in, double r_out);
  static Region box(Point lo, Point hi);
  /// Throws ConstructionError unless the parts are certified pairwise disjoint.
  static Region disjoint_union(std::vector<Region> parts);
  static Region difference(Region outer, Region hole);

  int dimension() const { return dim_; }
  Shape shape() const { return static_cast<Shape>(shape_.index()); }
  double measure() const { return measure_; }
  bool contains(std::span<const double> x) const;

  template <class T>
  const T& as() const { return std::get<T>(shape_); }

 private:
  using Variant = std::variant<Interval, Ball, Annulus, Box, DisjointUnion, Difference>;
  Region(int dim, Variant shape);

  int dim_;
  Variant shape_;
  double measure_;
};

/// Volume of the unit ball in R^n: 2, pi, 4pi/3.
double unit_ball_volume(int n);

inline double measure(const Region& region) { return region.measure(); }

/// Radius r >= 0 with unit_ball_volume(n) * r^n == m.
double ball_radius_for_measure(double m, int n);

/// True when the two regions are provably disjoint up to a null set.
/// 1D uses exact interval arithmetic; higher dimensions use closed-form
/// certificates for balls, annuli and boxes and answer false otherwise.
bool certified_disjoint(const Region& a, const Region& b);

/// True when `inner` is provably contained in `outer` up to a null set.
bool certified_subset(const Region& inner, const Region& outer);

/// Sorted, pairwise disjoint open intervals covering a 1D region.
std::vector<std::pair<double, double>> intervals_1d(const Region& region);

/// Draws uniform points from a region. Balls and annuli are sampled by
/// inverting the radial distribution; differences by rejection from the
/// outer region.
class RegionSampler {
 public:
  explicit RegionSampler(const Region& region);

  void sample(Rng& rng, std::span<double> out) const;

 private:
  Region region_;
  std::vector<RegionSampler> parts_;  // union parts, or the outer region of a difference
  std::vector<double> cumulative_;    // union part selection weights
};

/// Uniform unit vector (a random sign in 1D).
void random_direction(Rng& rng, std::span<double> out);

/// `count` uniform points, reproducible for a fixed seed.
std::vector<Point> sample_points(const Region& region, std::size_t count, std::uint64_t seed);

}  // namespace rlab
