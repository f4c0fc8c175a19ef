#include "rlab/supermod.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

double supermodular_delta(const Integrand& f, std::size_t i, std::size_t j, std::span<const double> y, double h,
                          double k) {
  if (i == j || i >= f.arity() || j >= f.arity() || y.size() != f.arity()) {
    throw ConstructionError("quadruple indices must be distinct coordinates of the integrand");
  }
  Point p(y.begin(), y.end());
  double base = f(p);
  p[i] += h;
  double up_i = f(p);
  p[j] += k;
  double up_ij = f(p);
  p[i] = y[i];
  double up_j = f(p);
  return up_ij + base - up_i - up_j;
}

namespace {

constexpr std::size_t kScanBlocks = 64;

struct Best {
  double delta = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
  SupermodularityWitness witness;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::string error;
};

std::string describe_quadruple(const SupermodularityWitness& w) {
  std::ostringstream os;
  os << "(i=" << w.i + 1 << ", j=" << w.j + 1 << ", y=(";
  for (std::size_t c = 0; c < w.y.size(); ++c) os << (c ? "," : "") << w.y[c];
  os << "), h=" << w.h << ", k=" << w.k << ")";
  return os.str();
}

LatticeVerdict scan(const Integrand& f, const LatticeSpec& lattice, ScanOptions opts) {
  const std::size_t m = f.arity();
  if (m < 2) throw ConstructionError("supermodularity needs an integrand of arity >= 2");
  const auto values = lattice.values();
  const auto& incs = lattice.increments;
  const std::size_t points = lattice.point_count(m);
  const std::size_t pairs = m * (m - 1) / 2;
  const std::size_t per_point = pairs * incs.size() * incs.size();

  std::vector<Best> best(kScanBlocks);
  parallel_blocks(points, opts.threads, kScanBlocks, [&](std::size_t block, std::size_t lo, std::size_t hi) {
    Best& b = best[block];
    SupermodularityWitness w;
    w.y.resize(m);
    for (std::size_t p = lo; p < hi; ++p) {
      lattice.point(p, values, w.y);
      std::size_t index = p * per_point;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          for (double h : incs) {
            for (double k : incs) {
              w.i = i;
              w.j = j;
              w.h = h;
              w.k = k;
              try {
                w.delta = supermodular_delta(f, i, j, w.y, h, k);
              } catch (const Error& e) {
                b.error_index = index;
                b.error = std::string(e.what()) + " at quadruple " + describe_quadruple(w);
                return;
              }
              if (w.delta < b.delta) {
                b.delta = w.delta;
                b.index = index;
                b.witness = w;
              }
              ++index;
            }
          }
        }
      }
    }
  });

  const Best* winner = nullptr;
  const Best* failure = nullptr;
  for (const auto& b : best) {
    if (b.error_index != std::numeric_limits<std::size_t>::max() &&
        (!failure || b.error_index < failure->error_index)) {
      failure = &b;
    }
    if (b.index != std::numeric_limits<std::size_t>::max() &&
        (!winner || b.delta < winner->delta || (b.delta == winner->delta && b.index < winner->index))) {
      winner = &b;
    }
  }
  if (failure) throw EvaluationError(failure->error);

  LatticeVerdict v;
  v.worst = winner->witness;
  v.quadruples = points * per_point;
  return v;
}

}  // namespace

LatticeVerdict check_supermodular(const Integrand& f, const LatticeSpec& lattice, ScanOptions opts) {
  auto v = scan(f, lattice, opts);
  v.passed = v.worst.delta >= -kViolationTolerance;
  return v;
}

LatticeVerdict check_strict_supermodular(const Integrand& f, const LatticeSpec& lattice, ScanOptions opts) {
  auto v = scan(f, lattice, opts);
  v.passed = v.worst.delta > kViolationTolerance;
  return v;
}

MixedDifferenceVerdict check_c2_supermodular(const Integrand& f, const LatticeSpec& grid, double fd_step) {
  if (!(fd_step > 0.0)) throw ConstructionError("finite-difference step must be positive");
  const std::size_t m = f.arity();
  if (m < 2) throw ConstructionError("mixed differences need an integrand of arity >= 2");
  const auto values = grid.values();
  const std::size_t count = grid.point_count(m);

  MixedDifferenceVerdict v;
  v.minimum = std::numeric_limits<double>::infinity();
  Point x(m);
  Point p(m);
  for (std::size_t idx = 0; idx < count; ++idx) {
    grid.point(idx, values, x);
    if (std::any_of(x.begin(), x.end(), [fd_step](double c) { return c < fd_step; })) continue;
    ++v.points;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        auto at = [&](double si, double sj) {
          p = x;
          p[i] += si * fd_step;
          p[j] += sj * fd_step;
          return f(p);
        };
        double d = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * fd_step * fd_step);
        if (d < v.minimum) {
          v.minimum = d;
          v.location = x;
          v.i = i;
          v.j = j;
        }
      }
    }
  }
  if (v.points == 0) throw ConstructionError("lattice has no interior points for the finite-difference check");
  v.passed = v.minimum >= -kFiniteDifferenceTolerance;
  return v;
}

}  // namespace rlab
