#include "rlab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw ConstructionError("unsupported dimension " + std::to_string(n) + " (expected 1, 2 or 3)");
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConstructionError(std::string(what) + " must be finite");
}

void check_point(const Point& p, const char* what) {
  check_dimension(static_cast<int>(p.size()));
  for (double v : p) check_finite(v, what);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double shell_measure(int n, double r_in, double r_out) {
  return unit_ball_volume(n) * (std::pow(r_out, n) - std::pow(r_in, n));
}

// Balls and annuli seen as {r_in < |x - c| < r_out}.
struct Shell {
  std::span<const double> center;
  double r_in;
  double r_out;
};

std::optional<Shell> as_shell(const Region& r) {
  if (r.shape() == Shape::Ball) return Shell{r.as<Ball>().center, 0.0, r.as<Ball>().radius};
  if (r.shape() == Shape::Annulus) {
    const auto& a = r.as<Annulus>();
    return Shell{a.center, a.r_in, a.r_out};
  }
  return std::nullopt;
}

double nearest_box_distance(std::span<const double> c, const Box& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d = std::max({b.lo[i] - c[i], 0.0, c[i] - b.hi[i]});
    s += d * d;
  }
  return std::sqrt(s);
}

double farthest_box_distance(std::span<const double> c, const Box& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d = std::max(std::abs(c[i] - b.lo[i]), std::abs(b.hi[i] - c[i]));
    s += d * d;
  }
  return std::sqrt(s);
}

bool shells_disjoint(const Shell& a, const Shell& b) {
  double d = distance(a.center, b.center);
  return d >= a.r_out + b.r_out || d + a.r_out <= b.r_in || d + b.r_out <= a.r_in;
}

bool shell_box_disjoint(const Shell& s, const Box& b) {
  return nearest_box_distance(s.center, b) >= s.r_out || farthest_box_distance(s.center, b) <= s.r_in;
}

bool boxes_disjoint(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (a.hi[i] <= b.lo[i] || b.hi[i] <= a.lo[i]) return true;
  }
  return false;
}

bool shell_in_shell(const Shell& inner, const Shell& outer) {
  double d = distance(inner.center, outer.center);
  if (d + inner.r_out > outer.r_out) return false;
  return outer.r_in == 0.0 || d >= inner.r_out + outer.r_in || d + outer.r_in <= inner.r_in;
}

bool box_in_shell(const Box& b, const Shell& s) {
  return farthest_box_distance(s.center, b) <= s.r_out &&
         (s.r_in == 0.0 || nearest_box_distance(s.center, b) >= s.r_in);
}

bool shell_in_box(const Shell& s, const Box& b) {
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    if (s.center[i] - s.r_out < b.lo[i] || s.center[i] + s.r_out > b.hi[i]) return false;
  }
  return true;
}

bool box_in_box(const Box& inner, const Box& outer) {
  for (std::size_t i = 0; i < inner.lo.size(); ++i) {
    if (inner.lo[i] < outer.lo[i] || inner.hi[i] > outer.hi[i]) return false;
  }
  return true;
}

using IntervalList = std::vector<std::pair<double, double>>;

bool intervals_overlap(const IntervalList& a, const IntervalList& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::max(a[i].first, b[j].first) < std::min(a[i].second, b[j].second)) return true;
    if (a[i].second < b[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

IntervalList merge_touching(IntervalList v) {
  IntervalList out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

IntervalList subtract(const IntervalList& from, const IntervalList& holes) {
  IntervalList out;
  for (auto [lo, hi] : from) {
    double cursor = lo;
    for (auto [hlo, hhi] : holes) {
      if (hhi <= cursor || hlo >= hi) continue;
      if (hlo > cursor) out.emplace_back(cursor, hlo);
      cursor = std::max(cursor, hhi);
      if (cursor >= hi) break;
    }
    if (cursor < hi) out.emplace_back(cursor, hi);
  }
  return out;
}

double uniform_radius(Rng& rng, int n, double r_in, double r_out) {
  if (n == 1) return rng.uniform(r_in, r_out);
  double lo = std::pow(r_in, n);
  double hi = std::pow(r_out, n);
  return std::pow(lo + (hi - lo) * rng.uniform(), 1.0 / n);
}

void uniform_direction(Rng& rng, std::span<double> out) {
  switch (out.size()) {
    case 1:
      out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      break;
    case 2: {
      double phi = 2.0 * std::numbers::pi * rng.uniform();
      out[0] = std::cos(phi);
      out[1] = std::sin(phi);
      break;
    }
    default: {
      double z = 2.0 * rng.uniform() - 1.0;
      double phi = 2.0 * std::numbers::pi * rng.uniform();
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      out[0] = s * std::cos(phi);
      out[1] = s * std::sin(phi);
      out[2] = z;
      break;
    }
  }
}

constexpr int kMaxRejections = 100000;

}  // namespace

double unit_ball_volume(int n) {
  check_dimension(n);
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return std::numbers::pi;
    default:
      return 4.0 * std::numbers::pi / 3.0;
  }
}

double ball_radius_for_measure(double m, int n) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw ConstructionError("measure must be finite and nonnegative");
  if (m == 0.0) return 0.0;
  double v = m / unit_ball_volume(n);
  switch (n) {
    case 1:
      return v;
    case 2:
      return std::sqrt(v);
    default:
      return std::cbrt(v);
  }
}

Region::Region(int dim, Variant shape) : dim_(dim), shape_(std::move(shape)), measure_(0.0) {
  std::visit(
      [this](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          measure_ = s.hi - s.lo;
        } else if constexpr (std::is_same_v<T, Ball>) {
          measure_ = shell_measure(dim_, 0.0, s.radius);
        } else if constexpr (std::is_same_v<T, Annulus>) {
          measure_ = shell_measure(dim_, s.r_in, s.r_out);
        } else if constexpr (std::is_same_v<T, Box>) {
          measure_ = 1.0;
          for (std::size_t i = 0; i < s.lo.size(); ++i) measure_ *= s.hi[i] - s.lo[i];
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          for (const auto& p : s.parts) measure_ += p.measure();
        } else {
          measure_ = std::max(0.0, s.outer->measure() - s.hole->measure());
        }
      },
      shape_);
}

Region Region::interval(double lo, double hi) {
  check_finite(lo, "interval bound");
  check_finite(hi, "interval bound");
  if (!(lo < hi)) throw ConstructionError("interval requires lo < hi");
  return Region(1, Interval{lo, hi});
}

Region Region::ball(Point center, double radius) {
  check_point(center, "ball center");
  check_finite(radius, "ball radius");
  if (radius < 0.0) throw ConstructionError("ball radius must be nonnegative");
  int n = static_cast<int>(center.size());
  return Region(n, Ball{std::move(center), radius});
}

Region Region::annulus(Point center, double r_in, double r_out) {
  check_point(center, "annulus center");
  check_finite(r_in, "annulus radius");
  check_finite(r_out, "annulus radius");
  if (r_in < 0.0 || !(r_in < r_out)) throw ConstructionError("annulus requires 0 <= r_in < r_out");
  int n = static_cast<int>(center.size());
  return Region(n, Annulus{std::move(center), r_in, r_out});
}

Region Region::box(Point lo, Point hi) {
  check_point(lo, "box corner");
  check_point(hi, "box corner");
  if (lo.size() != hi.size()) throw ConstructionError("box corners differ in dimension");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw ConstructionError("box requires lo < hi componentwise");
  }
  int n = static_cast<int>(lo.size());
  return Region(n, Box{std::move(lo), std::move(hi)});
}

Region Region::disjoint_union(std::vector<Region> parts) {
  if (parts.empty()) throw ConstructionError("union needs at least one part");
  int n = parts.front().dimension();
  for (const auto& p : parts) {
    if (p.dimension() != n) throw ConstructionError("union parts differ in dimension");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!certified_disjoint(parts[i], parts[j])) {
        throw ConstructionError("union parts " + std::to_string(i) + " and " + std::to_string(j) +
                                " are not certified disjoint");
      }
    }
  }
  return Region(n, DisjointUnion{std::move(parts)});
}

Region Region::difference(Region outer, Region hole) {
  if (outer.dimension() != hole.dimension()) throw ConstructionError("difference operands differ in dimension");
  if (!certified_subset(hole, outer)) throw ConstructionError("difference hole is not certified inside the outer region");
  int n = outer.dimension();
  return Region(n, Difference{std::make_shared<const Region>(std::move(outer)),
                              std::make_shared<const Region>(std::move(hole))});
}

bool Region::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw ConstructionError("point dimension does not match region");
  return std::visit(
      [x](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return s.lo < x[0] && x[0] < s.hi;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return distance(x, s.center) < s.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          double d = distance(x, s.center);
          return s.r_in < d && d < s.r_out;
        } else if constexpr (std::is_same_v<T, Box>) {
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(s.lo[i] < x[i] && x[i] < s.hi[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          return std::any_of(s.parts.begin(), s.parts.end(), [x](const Region& p) { return p.contains(x); });
        } else {
          return s.outer->contains(x) && !s.hole->contains(x);
        }
      },
      shape_);
}

std::vector<std::pair<double, double>> intervals_1d(const Region& region) {
  if (region.dimension() != 1) throw UnsupportedGeometry("interval decomposition needs a 1D region");
  IntervalList out;
  switch (region.shape()) {
    case Shape::Interval:
      out.emplace_back(region.as<Interval>().lo, region.as<Interval>().hi);
      break;
    case Shape::Ball: {
      const auto& b = region.as<Ball>();
      if (b.radius > 0.0) out.emplace_back(b.center[0] - b.radius, b.center[0] + b.radius);
      break;
    }
    case Shape::Annulus: {
      const auto& a = region.as<Annulus>();
      out.emplace_back(a.center[0] - a.r_out, a.center[0] - a.r_in);
      out.emplace_back(a.center[0] + a.r_in, a.center[0] + a.r_out);
      break;
    }
    case Shape::Box:
      out.emplace_back(region.as<Box>().lo[0], region.as<Box>().hi[0]);
      break;
    case Shape::Union:
      for (const auto& p : region.as<DisjointUnion>().parts) {
        auto sub = intervals_1d(p);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      std::sort(out.begin(), out.end());
      break;
    case Shape::Difference: {
      const auto& d = region.as<Difference>();
      out = subtract(intervals_1d(*d.outer), intervals_1d(*d.hole));
      break;
    }
  }
  return out;
}

bool certified_disjoint(const Region& a, const Region& b) {
  if (a.dimension() != b.dimension()) throw ConstructionError("regions differ in dimension");
  if (a.measure() == 0.0 || b.measure() == 0.0) return true;
  if (a.dimension() == 1) return !intervals_overlap(intervals_1d(a), intervals_1d(b));

  if (a.shape() == Shape::Union) {
    const auto& parts = a.as<DisjointUnion>().parts;
    return std::all_of(parts.begin(), parts.end(), [&b](const Region& p) { return certified_disjoint(p, b); });
  }
  if (b.shape() == Shape::Union) return certified_disjoint(b, a);
  if (a.shape() == Shape::Difference) {
    const auto& d = a.as<Difference>();
    return certified_disjoint(*d.outer, b) || certified_subset(b, *d.hole);
  }
  if (b.shape() == Shape::Difference) return certified_disjoint(b, a);

  auto sa = as_shell(a);
  auto sb = as_shell(b);
  if (sa && sb) return shells_disjoint(*sa, *sb);
  if (sa) return shell_box_disjoint(*sa, b.as<Box>());
  if (sb) return shell_box_disjoint(*sb, a.as<Box>());
  return boxes_disjoint(a.as<Box>(), b.as<Box>());
}

bool certified_subset(const Region& inner, const Region& outer) {
  if (inner.dimension() != outer.dimension()) throw ConstructionError("regions differ in dimension");
  if (inner.measure() == 0.0) return true;
  if (inner.dimension() == 1) {
    auto cover = merge_touching(intervals_1d(outer));
    for (auto [lo, hi] : intervals_1d(inner)) {
      bool inside = std::any_of(cover.begin(), cover.end(),
                                [lo, hi](const auto& c) { return c.first <= lo && hi <= c.second; });
      if (!inside) return false;
    }
    return true;
  }

  if (inner.shape() == Shape::Union) {
    const auto& parts = inner.as<DisjointUnion>().parts;
    return std::all_of(parts.begin(), parts.end(),
                       [&outer](const Region& p) { return certified_subset(p, outer); });
  }
  if (inner.shape() == Shape::Difference) return certified_subset(*inner.as<Difference>().outer, outer);
  if (outer.shape() == Shape::Union) {
    const auto& parts = outer.as<DisjointUnion>().parts;
    return std::any_of(parts.begin(), parts.end(),
                       [&inner](const Region& p) { return certified_subset(inner, p); });
  }
  if (outer.shape() == Shape::Difference) {
    const auto& d = outer.as<Difference>();
    return certified_subset(inner, *d.outer) && certified_disjoint(inner, *d.hole);
  }

  auto si = as_shell(inner);
  auto so = as_shell(outer);
  if (si && so) return shell_in_shell(*si, *so);
  if (so) return box_in_shell(inner.as<Box>(), *so);
  if (si) return shell_in_box(*si, outer.as<Box>());
  return box_in_box(inner.as<Box>(), outer.as<Box>());
}

RegionSampler::RegionSampler(const Region& region) : region_(region) {
  if (!(region.measure() > 0.0)) throw SamplingError("cannot sample a region of measure zero");
  if (region.shape() == Shape::Union) {
    double total = 0.0;
    for (const auto& p : region.as<DisjointUnion>().parts) {
      if (p.measure() == 0.0) continue;
      total += p.measure();
      parts_.emplace_back(p);
      cumulative_.push_back(total);
    }
  } else if (region.shape() == Shape::Difference) {
    parts_.emplace_back(*region.as<Difference>().outer);
  }
}

void RegionSampler::sample(Rng& rng, std::span<double> out) const {
  const int n = region_.dimension();
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    switch (region_.shape()) {
      case Shape::Interval:
        out[0] = rng.uniform(region_.as<Interval>().lo, region_.as<Interval>().hi);
        break;
      case Shape::Box: {
        const auto& b = region_.as<Box>();
        for (int i = 0; i < n; ++i) out[i] = rng.uniform(b.lo[i], b.hi[i]);
        break;
      }
      case Shape::Ball:
      case Shape::Annulus: {
        auto s = *as_shell(region_);
        double r = uniform_radius(rng, n, s.r_in, s.r_out);
        uniform_direction(rng, out);
        for (int i = 0; i < n; ++i) out[i] = s.center[i] + r * out[i];
        break;
      }
      case Shape::Union: {
        double u = rng.uniform() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        std::size_t k = std::min<std::size_t>(it - cumulative_.begin(), parts_.size() - 1);
        parts_[k].sample(rng, out);
        return;
      }
      case Shape::Difference:
        parts_.front().sample(rng, out);
        break;
    }
    if (region_.contains(out)) return;
  }
  throw SamplingError("rejection sampling exhausted its attempt budget");
}

void random_direction(Rng& rng, std::span<double> out) {
  if (out.empty() || out.size() > kMaxDimension) throw ConstructionError("unsupported dimension");
  uniform_direction(rng, out);
}

std::vector<Point> sample_points(const Region& region, std::size_t count, std::uint64_t seed) {
  RegionSampler sampler(region);
  Rng rng(seed);
  std::vector<Point> points(count, Point(region.dimension()));
  for (auto& p : points) sampler.sample(rng, p);
  return points;
}

}  // namespace rlab
