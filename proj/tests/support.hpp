#pragma once

// Shared generators and brute-force oracles for the test binaries. The
// oracles deliberately avoid the library's evaluation paths: they work on
// plain grids of midpoints.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rlab/simplefn.hpp"

namespace rlab::testing {

/// Random 1D simple function: up to `max_pieces` disjoint intervals with
/// endpoints on a 1/64 grid inside [-8, 8], values in (0, 10].
inline SimpleFunction random_function_1d(std::mt19937_64& gen, int max_pieces = 8) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  std::uniform_int_distribution<int> tick(-512, 512);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  int k = count(gen);
  std::vector<int> ends;
  while (static_cast<int>(ends.size()) < 2 * k) {
    int t = tick(gen);
    if (std::find(ends.begin(), ends.end(), t) == ends.end()) ends.push_back(t);
  }
  std::sort(ends.begin(), ends.end());
  std::vector<Piece> pieces;
  for (int p = 0; p < k; ++p) {
    double v = 10.0 - value(gen);  // (0, 10]
    pieces.push_back({v, Region::interval(ends[2 * p] / 64.0, ends[2 * p + 1] / 64.0)});
  }
  return SimpleFunction(1, std::move(pieces));
}

/// Same with integer values in {1..5}, so equal values occur and merge.
inline SimpleFunction random_integer_function_1d(std::mt19937_64& gen, int max_pieces = 6) {
  auto f = random_function_1d(gen, max_pieces);
  std::uniform_int_distribution<int> v(1, 5);
  std::vector<Piece> pieces;
  for (const auto& p : f.pieces()) {
    for (auto [lo, hi] : intervals_1d(p.region)) pieces.push_back({double(v(gen)), Region::interval(lo, hi)});
  }
  return SimpleFunction(1, std::move(pieces));
}

/// Midpoint rule for int F(u_1(x), ..., u_m(x)) dx over [lo, hi].
inline double riemann_hl_1d(const std::function<double(const std::vector<double>&)>& F,
                            const std::vector<SimpleFunction>& u, double lo, double hi, std::size_t cells) {
  double dx = (hi - lo) / double(cells);
  double sum = 0.0;
  std::vector<double> y(u.size());
  for (std::size_t c = 0; c < cells; ++c) {
    double x[1] = {lo + (double(c) + 0.5) * dx};
    for (std::size_t i = 0; i < u.size(); ++i) y[i] = u[i](x);
    sum += F(y);
  }
  return sum * dx;
}

/// Midpoint rule for int_A int_B k(x - y) dy dx on 1D intervals.
inline double riemann_pair_1d(double a_lo, double a_hi, double b_lo, double b_hi,
                              const std::function<double(double)>& k, std::size_t cells) {
  double dx = (a_hi - a_lo) / double(cells);
  double dy = (b_hi - b_lo) / double(cells);
  double sum = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    double x = a_lo + (double(i) + 0.5) * dx;
    for (std::size_t j = 0; j < cells; ++j) sum += k(x - (b_lo + (double(j) + 0.5) * dy));
  }
  return sum * dx * dy;
}

}  // namespace rlab::testing
