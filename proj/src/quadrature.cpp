#include "rlab/quadrature.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rlab::quad {

double adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  // Boost measures the error on the reference interval, so very short segments would never
  // meet a relative tolerance; integrate over [0, 1] instead.
  const double len = b - a;
  auto g = [&](double u) { return len * f(a + len * u); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 20, tol);
}

std::vector<double> segments(double a, double b, std::vector<double> cuts) {
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > pts.back() && c < b) pts.push_back(c);
  }
  pts.push_back(b);
  return pts;
}

double adaptive_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts,
                      double tol) {
  if (!(b > a)) return 0.0;
  auto pts = segments(a, b, std::move(cuts));
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += adaptive(f, pts[k], pts[k + 1], tol);
  return total;
}

double gauss_split(const std::function<double(double)>& f, double a, double b, std::vector<double> cuts, int sub) {
  if (!(b > a)) return 0.0;
  auto pts = segments(a, b, std::move(cuts));
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double w = (pts[k + 1] - pts[k]) / sub;
    for (int i = 0; i < sub; ++i) {
      double lo = pts[k] + i * w;
      total += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, i + 1 == sub ? pts[k + 1] : lo + w);
    }
  }
  return total;
}

}  // namespace rlab::quad
