#pragma once

// Constructive counterexamples: when an integrand fails supermodularity,
// or a kernel fails radial monotonicity, build the explicit step functions
// for which symmetrization decreases the functional, evaluate both sides
// and certify the gap.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rlab/functionals.hpp"
#include "rlab/supermod.hpp"

namespace rlab {

/// One evaluation of both sides of a target inequality.
struct ReportRow {
  std::string label;  // "R=2", "z1=0.5,z2=1.5", ...
  double parameter = 0.0;
  IntegralEstimate lhs;  // original functions
  IntegralEstimate rhs;  // symmetrized functions
  double gap = 0.0;      // lhs - rhs; positive means the inequality fails
  double std_error = 0.0;
  double decomposition = std::numeric_limits<double>::quiet_NaN();  // analytic rhs - lhs
  double i_eps = std::numeric_limits<double>::quiet_NaN();
  double i_r = std::numeric_limits<double>::quiet_NaN();
  bool consistent = true;  // direct and analytic paths agree
};

struct CounterexampleReport {
  std::string construction;
  std::optional<SupermodularityWitness> witness;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> terms;
  std::vector<std::pair<std::string, SimpleFunction>> functions;
  std::vector<ReportRow> rows;
  double gap = 0.0;        // gap of the decisive (last) row
  double tolerance = 0.0;  // certification threshold on the gap
  bool certified = false;  // gap > tolerance
  bool consistent = true;  // every row's cross-check passed
};

/// Hardy-Littlewood construction on two disjoint unit-measure sets E1, E2
/// ([0,1) and [1,2) in 1D; unit-measure balls ten apart otherwise). Throws
/// NotAWitness unless the witness slack (recomputed) is < -kViolationTolerance,
/// HypothesisViolated if F does not vanish on hyperplanes.
CounterexampleReport build_hl_counterexample(const Integrand& f, const SupermodularityWitness& w, int n);

struct RieszOptions {
  std::vector<double> radii{2.0, 3.0, 5.0, 10.0};  // scaled by max(1, eps) when left at the default
  std::optional<EpsT0> eps_t0;                    // verified before use; searched when absent
  MonteCarloOptions monte_carlo;
};

/// Two-function Riesz construction f = a 1_{B_R} + a' 1_{B_eps},
/// g = b 1_{B_rho} + b' 1_{B_eps(z)} with |z| = t0 and rho = t0 + eps + 1,
/// one row per radius R. Each row carries the direct rhs - lhs and the
/// decomposition delta I(eps) + (Psi(a, b+b') - Psi(a, b)) I(R).
CounterexampleReport build_riesz_counterexample(const Integrand& psi, const SupermodularityWitness& w,
                                                const Kernel& k, int n, const RieszOptions& opts = {});

struct MonotonicityInput {
  Point z1;
  Point z2;
  double eps = 0.0;
  double a = 1.0;
  double b = 1.0;
};

/// Kernel monotonicity construction: f = a on (B_R \ B_eps(z1)) ∪ B_eps(z2)
/// with R = (|z1| + |z2|) / 2, g = b 1_{B_eps(0)}. Certifies when the
/// symmetrized side is smaller, i.e. the kernel is larger near z2.
CounterexampleReport build_kernel_monotonicity_counterexample(const Integrand& psi, const Kernel& h,
                                                              const MonotonicityInput& in,
                                                              const MonteCarloOptions& opts = {});

struct MonotoneVerdict {
  bool passed = true;
  double min_difference = 0.0;  // min of h(z1) - h(z2) over pairs with |z1| <= |z2|
  Point z1;
  Point z2;
  double radial_defect = 0.0;  // max |h(x) - h(x')| over |x| = |x'|
  std::size_t pairs = 0;
};

/// Random pairs with radii in (0, r_max]; fails when the minimum difference
/// drops below -kViolationTolerance or the radial defect exceeds it.
MonotoneVerdict verify_kernel_radial_monotone(const Kernel& h, int n, std::size_t pair_count, std::uint64_t seed,
                                              double r_max = 5.0);

}  // namespace rlab
