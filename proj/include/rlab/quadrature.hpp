#pragma once

#include <functional>
#include <vector>

namespace rlab::quad {

/// Adaptive Gauss-Kronrod (31 points) on [a, b] to relative tolerance `tol`.
double adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Same, after splitting [a, b] at the interior points of `cuts`.
double adaptive_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts,
                      double tol = 1e-12);

/// Fixed 30-point Gauss-Legendre on each piece of [a, b] split at `cuts`;
/// each piece is further divided into `sub` equal parts.
double gauss_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts, int sub = 1);

/// Sorted, deduplicated cut points strictly inside (a, b), with a and b
/// prepended/appended.
std::vector<double> segments(double a, double b, std::vector<double> cuts);

}  // namespace rlab::quad
