#pragma once

#include <span>
#include <vector>

#include "rlab/regions.hpp"

namespace rlab {

struct Piece {
  double value;
  Region region;
};

/// Nonnegative step function: finitely many (value, region) pieces on
/// pairwise disjoint regions, zero elsewhere.
///
/// Construction normalizes: zero values and null regions are dropped,
/// pieces sharing a value are merged into one disjoint union, and pieces
/// are ordered by strictly decreasing value.
class SimpleFunction {
 public:
  SimpleFunction(int dimension, std::vector<Piece> pieces);

  static SimpleFunction zero(int dimension) { return SimpleFunction(dimension, {}); }

  int dimension() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  double operator()(std::span<const double> x) const;

  double support_measure() const;

 private:
  int dim_;
  std::vector<Piece> pieces_;
};

inline double evaluate(const SimpleFunction& f, std::span<const double> x) { return f(x); }

/// mu{a < f <= b}.
double layer_measure(const SimpleFunction& f, double a, double b);

/// Schwarz symmetrization by the layer-cake construction: the largest
/// value on a centered ball, each smaller value on the next centered
/// annulus, radii fixed by the cumulative superlevel measures.
SimpleFunction rearrange(const SimpleFunction& f);

/// Piecewise comparison of values and region measures/radii, relative
/// tolerance `tol`. Only meaningful for symmetrized functions.
bool same_radial_profile(const SimpleFunction& a, const SimpleFunction& b, double tol);

}  // namespace rlab
