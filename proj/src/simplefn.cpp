#include "rlab/simplefn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rlab/errors.hpp"

namespace rlab {

SimpleFunction::SimpleFunction(int dimension, std::vector<Piece> pieces) : dim_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw ConstructionError("unsupported dimension " + std::to_string(dimension));
  }
  std::map<double, std::vector<Region>, std::greater<>> by_value;
  for (auto& p : pieces) {
    if (!std::isfinite(p.value) || p.value < 0.0) throw ConstructionError("piece values must be finite and nonnegative");
    if (p.region.dimension() != dimension) throw ConstructionError("piece region dimension mismatch");
    if (p.value == 0.0 || p.region.measure() == 0.0) continue;
    by_value[p.value].push_back(std::move(p.region));
  }

  std::vector<const Region*> all;
  for (const auto& [v, regions] : by_value) {
    for (const auto& r : regions) all.push_back(&r);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!certified_disjoint(*all[i], *all[j])) {
        throw ConstructionError("pieces of a simple function must have disjoint regions");
      }
    }
  }

  for (auto& [v, regions] : by_value) {
    if (regions.size() == 1) {
      pieces_.push_back({v, std::move(regions.front())});
    } else {
      pieces_.push_back({v, Region::disjoint_union(std::move(regions))});
    }
  }
}

double SimpleFunction::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw ConstructionError("evaluation point has the wrong dimension");
  for (const auto& p : pieces_) {
    if (p.region.contains(x)) return p.value;
  }
  return 0.0;
}

double SimpleFunction::support_measure() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.region.measure();
  return m;
}

double layer_measure(const SimpleFunction& f, double a, double b) {
  if (!(a < b)) throw ConstructionError("layer_measure requires a < b");
  double m = 0.0;
  for (const auto& p : f.pieces()) {
    if (a < p.value && p.value <= b) m += p.region.measure();
  }
  return m;
}

SimpleFunction rearrange(const SimpleFunction& f) {
  const int n = f.dimension();
  const Point origin(n, 0.0);
  std::vector<Piece> out;
  double cumulative = 0.0;
  double inner = 0.0;
  for (const auto& p : f.pieces()) {
    cumulative += p.region.measure();
    double outer = ball_radius_for_measure(cumulative, n);
    if (outer <= inner) continue;
    if (inner == 0.0) {
      out.push_back({p.value, Region::ball(origin, outer)});
    } else {
      out.push_back({p.value, Region::annulus(origin, inner, outer)});
    }
    inner = outer;
  }
  return SimpleFunction(n, std::move(out));
}

namespace {

std::pair<double, double> radii(const Region& r) {
  if (r.shape() == Shape::Ball) return {0.0, r.as<Ball>().radius};
  if (r.shape() == Shape::Annulus) return {r.as<Annulus>().r_in, r.as<Annulus>().r_out};
  return {std::nan(""), std::nan("")};
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

bool same_radial_profile(const SimpleFunction& a, const SimpleFunction& b, double tol) {
  if (a.dimension() != b.dimension() || a.pieces().size() != b.pieces().size()) return false;
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    const auto& pa = a.pieces()[i];
    const auto& pb = b.pieces()[i];
    if (!close(pa.value, pb.value, tol) || !close(pa.region.measure(), pb.region.measure(), tol)) return false;
    auto [ia, oa] = radii(pa.region);
    auto [ib, ob] = radii(pb.region);
    if (!close(ia, ib, tol) || !close(oa, ob, tol)) return false;
  }
  return true;
}

}  // namespace rlab
