#include "rlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/quadrature.hpp"

namespace rlab {

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact1D:
      return "exact_1d";
    case Method::ClosedForm:
      return "closed_form";
    case Method::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

bool piecewise_constant(const Kernel& k) {
  return k.form() == Kernel::Form::IndicatorBall ||
         (k.form() == Kernel::Form::RadialTable && k.table_mode() == TableMode::Step);
}

double kernel_1d(const Kernel& k, double s) {
  double d[1] = {s};
  return k(d);
}

// Points of the real line where k(s) may lose smoothness.
std::vector<double> kernel_cuts_1d(const Kernel& k) {
  std::vector<double> cuts{0.0};
  if (k.is_radial()) {
    for (double b : k.radial_breakpoints()) {
      cuts.push_back(b);
      cuts.push_back(-b);
    }
  }
  return cuts;
}

// |A ∩ (B + s)| for A = (a1, a2), B = (b1, b2).
double overlap(double a1, double a2, double b1, double b2, double s) {
  return std::max(0.0, std::min(a2, b2 + s) - std::max(a1, b1 + s));
}

double interval_pair(double a1, double a2, double b1, double b2, const Kernel& k) {
  double pts[4] = {a1 - b2, a1 - b1, a2 - b2, a2 - b1};
  std::sort(pts, pts + 4);
  auto cuts = kernel_cuts_1d(k);
  cuts.push_back(pts[1]);
  cuts.push_back(pts[2]);
  auto segs = quad::segments(pts[0], pts[3], cuts);
  const bool constant = piecewise_constant(k);
  auto w = [=](double s) { return overlap(a1, a2, b1, b2, s); };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    double p = segs[i];
    double q = segs[i + 1];
    if (constant) {
      double kv = kernel_1d(k, 0.5 * (p + q));
      if (kv != 0.0) total += kv * 0.5 * (w(p) + w(q)) * (q - p);
    } else {
      total += quad::adaptive([&](double s) { return kernel_1d(k, s) * w(s); }, p, q);
    }
  }
  return total;
}

IntegralEstimate monte_carlo_pair(const Region& a, const Region& b, const Kernel& k, const MonteCarloOptions& opts,
                                  std::uint64_t stream) {
  if (opts.samples < 2) throw ConstructionError("Monte Carlo needs at least 2 samples");
  RegionSampler sa(a);
  RegionSampler sb(b);
  Rng rng = Rng::substream(opts.seed, stream);
  const int n = a.dimension();
  Point x(n), y(n), d(n);
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t s = 0; s < opts.samples; ++s) {
    sa.sample(rng, x);
    sb.sample(rng, y);
    for (int c = 0; c < n; ++c) d[c] = x[c] - y[c];
    double v = k(d);
    sum += v;
    sumsq += v * v;
  }
  const double count = static_cast<double>(opts.samples);
  double mean = sum / count;
  double var = std::max(0.0, (sumsq - count * mean * mean) / (count - 1.0));
  double scale = a.measure() * b.measure();
  return {scale * mean, scale * std::sqrt(var / count), Method::MonteCarlo, opts.samples, opts.seed};
}

bool uses_monte_carlo(int dim, const MonteCarloOptions& opts) { return dim != 1 || opts.force_monte_carlo; }

// ---- Hardy-Littlewood helpers ------------------------------------------

struct Segment {
  double lo;
  double hi;
  double value;
};

double hl_sweep_1d(const Integrand& f, std::span<const SimpleFunction> u) {
  const std::size_t m = u.size();
  std::vector<std::vector<Segment>> segs(m);
  std::vector<double> ends;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& p : u[i].pieces()) {
      for (auto [lo, hi] : intervals_1d(p.region)) {
        segs[i].push_back({lo, hi, p.value});
        ends.push_back(lo);
        ends.push_back(hi);
      }
    }
    std::sort(segs[i].begin(), segs[i].end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

  auto lookup = [](const std::vector<Segment>& s, double x) {
    auto it = std::upper_bound(s.begin(), s.end(), x, [](double v, const Segment& seg) { return v < seg.lo; });
    if (it == s.begin()) return 0.0;
    --it;
    return x < it->hi ? it->value : 0.0;
  };

  Point vals(m);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < ends.size(); ++c) {
    double mid = 0.5 * (ends[c] + ends[c + 1]);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      vals[i] = lookup(segs[i], mid);
      any = any || vals[i] != 0.0;
    }
    if (any) total += f(vals) * (ends[c + 1] - ends[c]);
  }
  return total;
}

struct Atom {
  std::size_t fn;
  double value;
  double r_in = 0.0;
  double r_out = 0.0;
};

struct Family {
  bool radial;
  Point center;  // radial families
  Box box;       // box families
  std::vector<Atom> atoms;
};

void collect_atoms(const Region& r, std::size_t fn, double value, std::vector<Family>& families) {
  auto family_for = [&families](bool radial, const Point& center, const Box* box) -> Family& {
    for (auto& fam : families) {
      if (fam.radial != radial) continue;
      if (radial && fam.center == center) return fam;
      if (!radial && fam.box.lo == box->lo && fam.box.hi == box->hi) return fam;
    }
    families.push_back({radial, radial ? center : Point{}, radial ? Box{} : *box, {}});
    return families.back();
  };
  switch (r.shape()) {
    case Shape::Ball:
      family_for(true, r.as<Ball>().center, nullptr).atoms.push_back({fn, value, 0.0, r.as<Ball>().radius});
      break;
    case Shape::Annulus: {
      const auto& a = r.as<Annulus>();
      family_for(true, a.center, nullptr).atoms.push_back({fn, value, a.r_in, a.r_out});
      break;
    }
    case Shape::Box:
      family_for(false, {}, &r.as<Box>()).atoms.push_back({fn, value});
      break;
    case Shape::Union:
      for (const auto& p : r.as<DisjointUnion>().parts) collect_atoms(p, fn, value, families);
      break;
    default:
      throw UnsupportedGeometry(
          "exact Hardy-Littlewood evaluation in dimension >= 2 supports balls, annuli and boxes only");
  }
}

Region outline(const Family& fam) {
  if (!fam.radial) return Region::box(fam.box.lo, fam.box.hi);
  double r = 0.0;
  for (const auto& a : fam.atoms) r = std::max(r, a.r_out);
  return Region::ball(fam.center, r);
}

double hl_families(const Integrand& f, std::span<const SimpleFunction> u) {
  const std::size_t m = u.size();
  const int n = u.front().dimension();
  std::vector<Family> families;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& p : u[i].pieces()) collect_atoms(p.region, i, p.value, families);
  }
  for (std::size_t a = 0; a < families.size(); ++a) {
    for (std::size_t b = a + 1; b < families.size(); ++b) {
      if (!certified_disjoint(outline(families[a]), outline(families[b]))) {
        throw UnsupportedGeometry("pieces do not form mutually disjoint nested ball/annulus families");
      }
    }
  }

  const double omega = unit_ball_volume(n);
  Point vals(m);
  double total = 0.0;
  for (const auto& fam : families) {
    if (!fam.radial) {
      std::fill(vals.begin(), vals.end(), 0.0);
      for (const auto& a : fam.atoms) vals[a.fn] = a.value;
      total += f(vals) * outline(fam).measure();
      continue;
    }
    std::vector<double> radii{0.0};
    for (const auto& a : fam.atoms) {
      radii.push_back(a.r_in);
      radii.push_back(a.r_out);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (std::size_t c = 0; c + 1 < radii.size(); ++c) {
      double mid = 0.5 * (radii[c] + radii[c + 1]);
      bool any = false;
      std::fill(vals.begin(), vals.end(), 0.0);
      for (const auto& a : fam.atoms) {
        if (a.r_in < mid && mid < a.r_out) {
          vals[a.fn] = a.value;
          any = true;
        }
      }
      if (any) total += f(vals) * omega * (std::pow(radii[c + 1], n) - std::pow(radii[c], n));
    }
  }
  return total;
}

// ---- Ball convolutions --------------------------------------------------

void require_radial(const Kernel& k) {
  if (!k.is_radial()) throw HypothesisViolated("kernel " + k.describe() + " is not radial");
}

// |B_eps(0) ∩ B_r(t e)| for n = 2, 3.
double ball_intersection(int n, double eps, double r, double t) {
  auto ball = [n](double rad) { return n == 2 ? kPi * rad * rad : 4.0 / 3.0 * kPi * rad * rad * rad; };
  if (t >= eps + r) return 0.0;
  if (t <= std::abs(eps - r)) return ball(std::min(eps, r));
  if (n == 2) {
    double a = eps * eps * std::acos(std::clamp((t * t + eps * eps - r * r) / (2.0 * t * eps), -1.0, 1.0));
    double b = r * r * std::acos(std::clamp((t * t + r * r - eps * eps) / (2.0 * t * r), -1.0, 1.0));
    double k = (-t + eps + r) * (t + eps - r) * (t - eps + r) * (t + eps + r);
    return a + b - 0.5 * std::sqrt(std::max(0.0, k));
  }
  double g = eps + r - t;
  return kPi * g * g * (t * t + 2.0 * t * (eps + r) - 3.0 * (eps - r) * (eps - r)) / (12.0 * t);
}

// Cut points accumulating geometrically at `at` from both sides, within width w.
void graded_cuts(std::vector<double>& cuts, double at, double w) {
  for (int i = 1; i <= 8; ++i) {
    double d = w * std::ldexp(1.0, -i);
    cuts.push_back(at - d);
    cuts.push_back(at + d);
  }
}

// Integral of j(|t e - rho omega|) over omega in S^{n-1}, n = 2, 3.
double spherical_average_integral(const Kernel& k, int n, double t, double rho) {
  if (t == 0.0 || rho == 0.0) return (n == 2 ? 2.0 * kPi : 4.0 * kPi) * k.radial_value(t + rho);
  if (n == 3) {
    // substituting u = |t e - rho omega| makes the integrand smooth between kernel breakpoints
    double lo = std::abs(t - rho), hi = t + rho;
    return 2.0 * kPi / (t * rho) *
           quad::gauss_split([&](double u) { return k.radial_value(u) * u; }, lo, hi, k.radial_breakpoints(), 2);
  }
  auto dist = [t, rho](double th) {
    double s = std::sin(0.5 * th);
    return std::sqrt((t - rho) * (t - rho) + 4.0 * t * rho * s * s);
  };
  std::vector<double> cuts;
  for (double b : k.radial_breakpoints()) {
    double c = (t * t + rho * rho - b * b) / (2.0 * t * rho);
    if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
  }
  // the kernel's cusp at the origin is nearly reached at th ~ |t - rho| / sqrt(t rho)
  double scale = std::abs(t - rho) / std::sqrt(t * rho);
  for (double m : {1.0, 4.0, 16.0}) cuts.push_back(m * scale);
  return 2.0 * quad::gauss_split([&](double th) { return k.radial_value(dist(th)); }, 0.0, kPi, cuts, 2);
}

// Piecewise Chebyshev interpolant of a function on [0, end], exact at its nodes.
class ChebyshevTable {
 public:
  ChebyshevTable(const std::function<double(double)>& f, double end, std::vector<double> cuts, double max_len) {
    auto pts = quad::segments(0.0, end, std::move(cuts));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      int pieces = std::max(1, static_cast<int>(std::ceil((pts[i + 1] - pts[i]) / max_len)));
      double w = (pts[i + 1] - pts[i]) / pieces;
      for (int p = 0; p < pieces; ++p) starts_.push_back(pts[i] + p * w);
    }
    starts_.push_back(end);
    for (std::size_t i = 0; i + 1 < starts_.size(); ++i) {
      for (int j = 0; j <= kDegree; ++j) values_.push_back(f(node(i, j)));
    }
  }

  double operator()(double s) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end() - 1, s);
    std::size_t i = it == starts_.begin() ? 0 : static_cast<std::size_t>(it - starts_.begin()) - 1;
    i = std::min(i, starts_.size() - 2);
    // barycentric formula for second-kind Chebyshev points
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= kDegree; ++j) {
      double x = node(i, j);
      if (s == x) return values_[i * (kDegree + 1) + j];
      double w = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == kDegree) ? 0.5 : 1.0) / (s - x);
      num += w * values_[i * (kDegree + 1) + j];
      den += w;
    }
    return num / den;
  }

 private:
  static constexpr int kDegree = 20;

  double node(std::size_t i, int j) const {
    double a = starts_[i], b = starts_[i + 1];
    return 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * j / kDegree);
  }

  std::vector<double> starts_;
  std::vector<double> values_;
};

// Radii s where h(s) may lose smoothness.
std::vector<double> h_cuts(const Kernel& k, double eps) {
  std::vector<double> cuts{eps};
  for (double b : k.radial_breakpoints()) {
    cuts.push_back(b + eps);
    cuts.push_back(std::abs(b - eps));
  }
  return cuts;
}

// Weight of h(s) in I(t): |S_s ∩ B_t(0)| - |S_s ∩ B_t(z)| for the sphere S_s of radius s.
double overlap_weight(int n, double s, double z0, double t) {
  if (n == 1) {
    double base = s < t ? 2.0 : 0.0;
    double shifted = (std::abs(z0 - s) < t ? 1.0 : 0.0) + (s + z0 < t ? 1.0 : 0.0);
    return base - shifted;
  }
  double sphere = n == 2 ? 2.0 * kPi * s : 4.0 * kPi * s * s;
  double base = s < t ? sphere : 0.0;
  double c = std::clamp((s * s + z0 * z0 - t * t) / (2.0 * s * z0), -1.0, 1.0);
  double shifted = n == 2 ? s * 2.0 * std::acos(c) : 2.0 * kPi * s * s * (1.0 - c);
  return base - shifted;
}

constexpr std::size_t kMidpointPanels = 2048;
constexpr double kMidpointTolerance = 1e-8;
constexpr int kMaxDoublings = 8;

}  // namespace

IntegralEstimate eval_hl(const Integrand& f, std::span<const SimpleFunction> u) {
  if (u.empty()) throw ConstructionError("eval_hl needs at least one function");
  if (f.arity() != u.size()) {
    throw ConstructionError("integrand arity " + std::to_string(f.arity()) + " does not match " +
                            std::to_string(u.size()) + " functions");
  }
  const int n = u.front().dimension();
  for (const auto& ui : u) {
    if (ui.dimension() != n) throw ConstructionError("functions differ in dimension");
  }
  require_vanishes_on_hyperplanes(f);
  if (n == 1) return {hl_sweep_1d(f, u), 0.0, Method::Exact1D, 0, 0};
  return {hl_families(f, u), 0.0, Method::ClosedForm, 0, 0};
}

IntegralEstimate kernel_pair_integral(const Region& a, const Region& b, const Kernel& k, const MonteCarloOptions& opts,
                                      std::uint64_t stream) {
  if (a.dimension() != b.dimension()) throw ConstructionError("kernel pair regions differ in dimension");
  if (uses_monte_carlo(a.dimension(), opts)) return monte_carlo_pair(a, b, k, opts, stream);

  double total = 0.0;
  for (auto [a1, a2] : intervals_1d(a)) {
    for (auto [b1, b2] : intervals_1d(b)) total += interval_pair(a1, a2, b1, b2, k);
  }
  return {total, 0.0, Method::Exact1D, 0, 0};
}

IntegralEstimate eval_riesz2(const Integrand& psi, const SimpleFunction& f, const SimpleFunction& g, const Kernel& k,
                             const MonteCarloOptions& opts) {
  if (psi.arity() != 2) throw ConstructionError("the Riesz functional needs an integrand of arity 2");
  if (f.dimension() != g.dimension()) throw ConstructionError("f and g differ in dimension");
  require_vanishes_on_hyperplanes(psi);

  const auto& fp = f.pieces();
  const auto& gp = g.pieces();
  const std::size_t pairs = fp.size() * gp.size();
  std::vector<double> weight(pairs);
  for (std::size_t p = 0; p < fp.size(); ++p) {
    for (std::size_t q = 0; q < gp.size(); ++q) {
      double v[2] = {fp[p].value, gp[q].value};
      weight[p * gp.size() + q] = psi(v);
    }
  }

  std::vector<IntegralEstimate> parts(pairs);
  std::vector<std::exception_ptr> errors(pairs);
  parallel_blocks(pairs, opts.threads, pairs, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      if (weight[idx] == 0.0) continue;
      try {
        parts[idx] = kernel_pair_integral(fp[idx / gp.size()].region, gp[idx % gp.size()].region, k, opts, idx);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  IntegralEstimate out;
  double var = 0.0;
  for (std::size_t idx = 0; idx < pairs; ++idx) {
    out.value += weight[idx] * parts[idx].value;
    double s = weight[idx] * parts[idx].std_error;
    var += s * s;
  }
  out.std_error = std::sqrt(var);
  if (uses_monte_carlo(f.dimension(), opts)) {
    out.method = Method::MonteCarlo;
    out.samples = opts.samples;
    out.seed = opts.seed;
  }
  return out;
}

double ball_convolution_H(const Kernel& k, double eps, int n, double t) {
  require_radial(k);
  if (!(eps > 0.0)) throw ConstructionError("ball radius eps must be positive");
  if (!(t >= 0.0)) throw ConstructionError("h(t) needs t >= 0");
  unit_ball_volume(n);

  if (n == 1) {
    if (k.form() == Kernel::Form::IndicatorBall) {
      double r = k.indicator_radius();
      return std::max(0.0, std::min(eps, t + r) - std::max(-eps, t - r));
    }
    auto cuts = kernel_cuts_1d(k);
    if (piecewise_constant(k)) {
      auto segs = quad::segments(t - eps, t + eps, cuts);
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        total += kernel_1d(k, 0.5 * (segs[i] + segs[i + 1])) * (segs[i + 1] - segs[i]);
      }
      return total;
    }
    return quad::adaptive_split([&](double s) { return k.radial_value(std::abs(s)); }, t - eps, t + eps, cuts);
  }

  if (k.form() == Kernel::Form::IndicatorBall) return ball_intersection(n, eps, k.indicator_radius(), t);
  std::vector<double> cuts;
  for (double b : k.radial_breakpoints()) {
    cuts.push_back(std::abs(t - b));
    cuts.push_back(t + b);
  }
  cuts.push_back(t);
  graded_cuts(cuts, t, eps);
  return quad::gauss_split(
      [&](double rho) { return std::pow(rho, n - 1) * spherical_average_integral(k, n, t, rho); }, 0.0, eps, cuts);
}

double ball_difference_I(const Kernel& k, double eps, std::span<const double> z, double t) {
  require_radial(k);
  const int n = static_cast<int>(z.size());
  unit_ball_volume(n);
  const double z0 = norm(z);
  if (!(z0 > 0.0)) throw ConstructionError("I(t) needs a nonzero shift z");
  if (!(t > 0.0)) throw ConstructionError("I(t) needs t > 0");

  auto cuts = h_cuts(k, eps);
  cuts.push_back(t);
  cuts.push_back(std::abs(z0 - t));
  cuts.push_back(z0 + t);
  const auto segs = quad::segments(0.0, z0 + t, cuts);
  const double total_length = z0 + t;

  // Away from the closed forms h is costly, so it is tabulated once per call.
  std::function<double(double)> h = [&](double s) { return ball_convolution_H(k, eps, n, s); };
  std::optional<ChebyshevTable> table;
  if (k.form() != Kernel::Form::IndicatorBall && !(n == 1 && piecewise_constant(k))) {
    table.emplace(h, total_length, h_cuts(k, eps), 0.25);
    h = [&](double s) { return (*table)(s); };
  }

  auto midpoint = [&](std::size_t panels) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      double a = segs[i];
      double len = segs[i + 1] - a;
      auto count = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(panels * len / total_length)));
      double du = 1.0 / static_cast<double>(count);
      double seg_sum = 0.0;
      for (std::size_t p = 0; p < count; ++p) {
        double u = (static_cast<double>(p) + 0.5) * du;
        if (n == 1) {
          double s = a + u * len;
          seg_sum += overlap_weight(n, s, z0, t) * h(s);
          continue;
        }
        // s = a + len (1 - cos(pi u)) / 2 clusters panels at the segment ends,
        // where the sphere overlap has square-root behaviour
        double s = a + 0.5 * len * (1.0 - std::cos(kPi * u));
        double w = overlap_weight(n, s, z0, t);
        if (w != 0.0) seg_sum += w * h(s) * 0.5 * kPi * std::sin(kPi * u);
      }
      sum += seg_sum * len * du;
    }
    return sum;
  };

  std::size_t panels = kMidpointPanels;
  double previous = midpoint(panels);
  for (int d = 0; d < kMaxDoublings; ++d) {
    panels *= 2;
    double next = midpoint(panels);
    if (std::abs(next - previous) < kMidpointTolerance) return next;
    previous = next;
  }
  return previous;
}

double ball_difference_tail_bound(const Kernel& k, double eps, std::span<const double> z, double t) {
  require_radial(k);
  const int n = static_cast<int>(z.size());
  const double z0 = norm(z);
  if (!(t > z0)) throw ConstructionError("the tail bound needs t > |z|");
  auto f = [&](double s) { return std::pow(s, n - 1) * ball_convolution_H(k, eps, n, s); };
  double radial = n == 1 ? quad::adaptive_split(f, t - z0, t + z0, h_cuts(k, eps), 1e-10)
                         : quad::gauss_split(f, t - z0, t + z0, h_cuts(k, eps), 2);
  return n * unit_ball_volume(n) * radial;
}

void check_kernel_hypotheses(const Kernel& k, int n) {
  require_radial(k);
  unit_ball_volume(n);
  double r_max = 1e3;
  for (double b : k.radial_breakpoints()) r_max = std::max(r_max, 10.0 * b);
  constexpr int kProbes = 64;
  constexpr double kStart = 1e-3;

  double previous = 0.0;
  double q_max = 0.0;
  double q_last = 0.0;
  bool nonzero = false;
  for (int i = 0; i < kProbes; ++i) {
    double r = kStart * std::pow(r_max / kStart, static_cast<double>(i) / (kProbes - 1));
    double j = k.radial_value(r);
    if (i > 0 && j > previous + 1e-12 * std::max(1.0, std::abs(previous))) {
      std::ostringstream os;
      os << "kernel " << k.describe() << " increases near r = " << r;
      throw HypothesisViolated(os.str());
    }
    previous = j;
    nonzero = nonzero || j != 0.0;
    double q = std::pow(r, n - 1) * std::abs(j);
    q_max = std::max(q_max, q);
    q_last = q;
  }
  if (!nonzero) throw HypothesisViolated("kernel " + k.describe() + " vanishes on every probe");
  if (q_last > 1e-2 * q_max) {
    std::ostringstream os;
    os << "r^(n-1) j(r) does not decay for kernel " << k.describe() << " in dimension " << n << ": value " << q_last
       << " at r = " << r_max;
    throw LimitViolated(os.str());
  }
}

bool verify_eps_t0(const Kernel& k, EpsT0 c) {
  require_radial(k);
  if (!(c.eps > 0.0) || !(c.t0 > 2.0 * c.eps)) return false;
  constexpr int kSamples = 256;
  double inner_min = k.radial_value(c.eps * 1e-6);
  double outer_max = k.radial_value(c.t0 - c.eps);
  for (int i = 1; i <= kSamples; ++i) {
    double f = static_cast<double>(i) / kSamples;
    inner_min = std::min(inner_min, k.radial_value(c.eps * f));
    outer_max = std::max(outer_max, k.radial_value(c.t0 - c.eps + 2.0 * c.eps * f));
  }
  return outer_max < inner_min;
}

EpsT0 find_eps_t0(const Kernel& k, int n) {
  check_kernel_hypotheses(k, n);
  static constexpr double kT0[] = {0.5,  1.0,   1.5,   2.0,  3.0,   5.0,  7.5,   10.0,  15.0, 20.0,
                                   30.0, 50.0,  75.0,  100., 150.,  200., 300.,  500.,  750., 1000.,
                                   0.25, 0.1,   0.05,  0.025, 0.01, 0.005, 0.0025, 0.001};
  static constexpr double kRatio[] = {6.0, 12.0, 48.0};
  for (double t0 : kT0) {
    for (double ratio : kRatio) {
      EpsT0 c{t0 / ratio, t0};
      if (verify_eps_t0(k, c)) return c;
    }
  }
  throw NoStrictDecreaseFound("no (eps, t0) with a strict kernel decrease found for " + k.describe());
}

}  // namespace rlab
