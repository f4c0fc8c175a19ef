#pragma once

#include <cstddef>
#include <optional>

#include "rlab/integrand.hpp"
#include "rlab/lattice.hpp"

namespace rlab {

inline constexpr double kViolationTolerance = 1e-9;
inline constexpr double kFiniteDifferenceTolerance = 1e-6;
inline constexpr double kDefaultFdStep = 1e-3;

/// A quadruple (i, j, y, h, k) of the supermodularity inequality and its
/// signed slack
///   delta = F(y + h e_i + k e_j) + F(y) - F(y + h e_i) - F(y + k e_j).
/// Indices are zero-based.
struct SupermodularityWitness {
  std::size_t i = 0;
  std::size_t j = 1;
  Point y;
  double h = 0.0;
  double k = 0.0;
  double delta = 0.0;
};

/// Recomputes the slack of a quadruple.
double supermodular_delta(const Integrand& f, std::size_t i, std::size_t j, std::span<const double> y, double h,
                          double k);

inline double supermodular_delta(const Integrand& f, const SupermodularityWitness& w) {
  return supermodular_delta(f, w.i, w.j, w.y, w.h, w.k);
}

/// Outcome of a lattice scan. `worst` is the globally smallest-slack
/// quadruple (ties resolved by scan order), always populated.
struct LatticeVerdict {
  bool passed = true;
  SupermodularityWitness worst;
  std::size_t quadruples = 0;
};

/// Scan options; `threads == 0` picks the hardware concurrency. The
/// reduction is deterministic for every thread count.
struct ScanOptions {
  unsigned threads = 0;
};

/// passed == (min delta >= -kViolationTolerance). Evaluation errors are
/// rethrown as EvaluationError naming the offending quadruple.
LatticeVerdict check_supermodular(const Integrand& f, const LatticeSpec& lattice = {}, ScanOptions opts = {});

/// passed == (min delta > kViolationTolerance).
LatticeVerdict check_strict_supermodular(const Integrand& f, const LatticeSpec& lattice = {},
                                         ScanOptions opts = {});

struct MixedDifferenceVerdict {
  bool passed = true;
  double minimum = 0.0;
  Point location;
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t points = 0;
};

/// Central mixed second difference
///   [F(x+h_i+h_j) - F(x+h_i-h_j) - F(x-h_i+h_j) + F(x-h_i-h_j)] / (4 h^2)
/// at every lattice point with all coordinates >= fd_step, for every pair
/// i < j. passed == (minimum >= -kFiniteDifferenceTolerance).
MixedDifferenceVerdict check_c2_supermodular(const Integrand& f, const LatticeSpec& grid = {},
                                             double fd_step = kDefaultFdStep);

}  // namespace rlab
