#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rlab {

/// Finite grid {0, step, 2 step, ..., y_max}^m of base points, plus the
/// positive increments tried along each coordinate.
struct LatticeSpec {
  double y_max = 4.0;
  double step = 0.5;
  std::vector<double> increments{0.5, 1.0};

  /// Throws ConstructionError on nonpositive step, step > y_max or a
  /// nonpositive increment.
  void validate() const;

  /// Per-coordinate grid values, ascending from 0.
  std::vector<double> values() const;

  /// Number of lattice points in [0, y_max]^m.
  std::size_t point_count(std::size_t m) const;

  /// Fills `out` with the point of the given index. Points are enumerated
  /// with the first coordinate varying fastest.
  void point(std::size_t index, std::span<const double> values, std::span<double> out) const;

  /// Integer grid {0, 1, ..., 4} used to probe the hyperplane hypothesis.
  static LatticeSpec hyperplane_probe() { return LatticeSpec{4.0, 1.0, {1.0}}; }
};

}  // namespace rlab
