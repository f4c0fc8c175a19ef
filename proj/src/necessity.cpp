#include "rlab/necessity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

constexpr double kExactGapTolerance = 1e-9;
constexpr double kDecompositionTolerance = 1e-8;
constexpr double kStderrMultiplier = 4.0;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double checked_delta(const Integrand& f, const SupermodularityWitness& w) {
  double delta = supermodular_delta(f, w);
  if (!(delta < -kViolationTolerance)) {
    throw NotAWitness("quadruple has slack " + format_number(delta) + " >= 0; the inequality holds there");
  }
  return delta;
}

double psi2(const Integrand& psi, double u, double v) {
  double args[2] = {u, v};
  return psi(args);
}

bool exact(const IntegralEstimate& e) { return e.method != Method::MonteCarlo; }

void finish(CounterexampleReport& r) {
  const auto& last = r.rows.back();
  r.gap = last.gap;
  r.tolerance = exact(last.lhs) && exact(last.rhs) ? kExactGapTolerance : kStderrMultiplier * last.std_error;
  r.certified = r.gap > r.tolerance;
  r.consistent = std::all_of(r.rows.begin(), r.rows.end(), [](const ReportRow& row) { return row.consistent; });
}

ReportRow compare(std::string label, double parameter, IntegralEstimate lhs, IntegralEstimate rhs) {
  ReportRow row;
  row.label = std::move(label);
  row.parameter = parameter;
  row.lhs = lhs;
  row.rhs = rhs;
  row.gap = lhs.value - rhs.value;
  row.std_error = std::hypot(lhs.std_error, rhs.std_error);
  return row;
}

bool agrees(double direct, double analytic, const ReportRow& row) {
  double slack = exact(row.lhs) && exact(row.rhs) ? kDecompositionTolerance
                                                  : kStderrMultiplier * row.std_error + kDecompositionTolerance;
  return std::abs(direct - analytic) <= slack;
}

Point unit_vector(int n, double length) {
  Point p(n, 0.0);
  p[0] = length;
  return p;
}

}  // namespace

CounterexampleReport build_hl_counterexample(const Integrand& f, const SupermodularityWitness& w, int n) {
  const std::size_t m = f.arity();
  if (w.y.size() != m) throw ConstructionError("witness point does not match the integrand arity");
  const double delta = checked_delta(f, w);
  require_vanishes_on_hyperplanes(f);

  const Point origin(n, 0.0);
  Region e1 = n == 1 ? Region::interval(0.0, 1.0) : Region::ball(origin, ball_radius_for_measure(1.0, n));
  Region e2 = n == 1 ? Region::interval(1.0, 2.0) : Region::ball(unit_vector(n, 10.0), ball_radius_for_measure(1.0, n));

  const double a = w.y[w.i];
  const double b = w.y[w.i] + w.h;
  const double c = w.y[w.j];
  const double d = w.y[w.j] + w.k;

  std::vector<SimpleFunction> u;
  for (std::size_t l = 0; l < m; ++l) {
    double on_e1 = w.y[l];
    double on_e2 = w.y[l];
    if (l == w.i) {
      on_e1 = a;
      on_e2 = b;
    } else if (l == w.j) {
      on_e1 = d;
      on_e2 = c;
    }
    u.emplace_back(n, std::vector<Piece>{{on_e1, e1}, {on_e2, e2}});
  }
  std::vector<SimpleFunction> u_star;
  for (const auto& ui : u) u_star.push_back(rearrange(ui));

  CounterexampleReport r;
  r.construction = "hardy_littlewood";
  r.witness = w;
  r.witness->delta = delta;
  r.parameters = {{"dim", n}, {"measure_E1", e1.measure()}, {"a", a}, {"b", b}, {"c", c}, {"d", d}};
  r.terms = {{"delta", delta}, {"expected_gap", -delta * e1.measure()}};
  for (std::size_t l = 0; l < m; ++l) r.functions.emplace_back("u" + std::to_string(l + 1), u[l]);
  for (std::size_t l = 0; l < m; ++l) r.functions.emplace_back("u" + std::to_string(l + 1) + "*", u_star[l]);

  auto row = compare("E1,E2", e1.measure(), eval_hl(f, u), eval_hl(f, u_star));
  double expected = -delta * e1.measure();
  row.decomposition = -expected;
  row.consistent = std::abs(row.gap - expected) <= kExactGapTolerance * std::max(1.0, std::abs(expected));
  r.rows.push_back(row);
  finish(r);
  return r;
}

CounterexampleReport build_riesz_counterexample(const Integrand& psi, const SupermodularityWitness& w,
                                                const Kernel& k, int n, const RieszOptions& opts) {
  if (psi.arity() != 2) throw ConstructionError("the Riesz construction needs an integrand of arity 2");
  if (w.y.size() != 2) throw ConstructionError("witness point must have two coordinates");
  const double delta = checked_delta(psi, w);
  require_vanishes_on_hyperplanes(psi);

  EpsT0 et;
  if (opts.eps_t0) {
    check_kernel_hypotheses(k, n);
    if (!verify_eps_t0(k, *opts.eps_t0)) {
      throw NoStrictDecreaseFound("supplied (eps, t0) does not show a strict kernel decrease");
    }
    et = *opts.eps_t0;
  } else {
    et = find_eps_t0(k, n);
  }
  const double eps = et.eps;

  // Coordinate 0 carries (a, a'), coordinate 1 carries (b, b').
  const double a = w.y[0];
  const double b = w.y[1];
  const double a_inc = w.i == 0 ? w.h : w.k;
  const double b_inc = w.i == 0 ? w.k : w.h;

  std::vector<double> radii = opts.radii;
  if (radii == RieszOptions{}.radii) {
    for (double& R : radii) R *= std::max(1.0, eps);
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > eps) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw ConstructionError("radii must be increasing and exceed eps");
    }
  }
  if (radii.empty()) throw ConstructionError("at least one radius R is required");

  const Point origin(n, 0.0);
  const Point z = unit_vector(n, et.t0);
  const double rho = et.t0 + eps + 1.0;

  SimpleFunction g(n, {{b + b_inc, Region::ball(z, eps)},
                       {b, Region::difference(Region::ball(origin, rho), Region::ball(z, eps))}});
  SimpleFunction g_star = rearrange(g);

  const double i_eps = ball_difference_I(k, eps, z, eps);
  const double secondary = psi2(psi, a, b + b_inc) - psi2(psi, a, b);

  CounterexampleReport r;
  r.construction = "riesz";
  r.witness = w;
  r.witness->delta = delta;
  r.parameters = {{"dim", n}, {"eps", eps},     {"t0", et.t0}, {"rho", rho},
                  {"a", a},   {"a_inc", a_inc}, {"b", b},      {"b_inc", b_inc}};
  r.terms = {{"bracket_delta", delta}, {"I_eps", i_eps}, {"secondary_factor", secondary}};

  for (double R : radii) {
    SimpleFunction f(n, {{a + a_inc, Region::ball(origin, eps)}, {a, Region::annulus(origin, eps, R)}});
    SimpleFunction f_star = rearrange(f);
    auto row = compare("R=" + format_number(R), R, eval_riesz2(psi, f, g, k, opts.monte_carlo),
                       eval_riesz2(psi, f_star, g_star, k, opts.monte_carlo));
    row.i_eps = i_eps;
    row.i_r = ball_difference_I(k, eps, z, R);
    row.decomposition = delta * i_eps + secondary * row.i_r;
    row.consistent = agrees(-row.gap, row.decomposition, row);
    r.rows.push_back(row);
    if (R == radii.back()) {
      r.parameters.emplace_back("R", R);
      r.functions = {{"f", f}, {"g", g}, {"f*", f_star}, {"g*", g_star}};
    }
  }
  finish(r);
  return r;
}

CounterexampleReport build_kernel_monotonicity_counterexample(const Integrand& psi, const Kernel& h,
                                                              const MonotonicityInput& in,
                                                              const MonteCarloOptions& opts) {
  if (psi.arity() != 2) throw ConstructionError("the kernel construction needs an integrand of arity 2");
  require_vanishes_on_hyperplanes(psi);
  if (!check_supermodular(psi).passed) {
    throw HypothesisViolated("integrand " + psi.describe() + " is not supermodular on the default lattice");
  }
  if (!(in.a > 0.0) || !(in.b > 0.0)) throw ConstructionError("a and b must be positive");
  const double weight = psi2(psi, in.a, in.b);
  if (!(weight > 0.0)) throw HypothesisViolated("Psi(a, b) must be positive");

  if (in.z1.size() != in.z2.size()) throw ConstructionError("z1 and z2 differ in dimension");
  const int n = static_cast<int>(in.z1.size());
  const double r1 = norm(in.z1);
  const double r2 = norm(in.z2);
  if (!(0.0 < r1 && r1 < r2)) throw ConstructionError("geometry requires 0 < |z1| < |z2|");
  if (!(in.eps > 0.0 && in.eps < 0.5 * (r2 - r1))) throw ConstructionError("geometry requires 0 < eps < (|z2| - |z1|) / 2");

  const Point origin(n, 0.0);
  const double R = 0.5 * (r1 + r2);
  Region support = Region::disjoint_union(
      {Region::difference(Region::ball(origin, R), Region::ball(in.z1, in.eps)), Region::ball(in.z2, in.eps)});
  SimpleFunction f(n, {{in.a, support}});
  SimpleFunction g(n, {{in.b, Region::ball(origin, in.eps)}});
  SimpleFunction f_star = rearrange(f);
  const double r_star = f_star.empty() ? 0.0 : f_star.pieces().front().region.as<Ball>().radius;

  Region core = Region::ball(origin, in.eps);
  auto near = kernel_pair_integral(Region::ball(in.z1, in.eps), core, h, opts, 1000);
  auto far = kernel_pair_integral(Region::ball(in.z2, in.eps), core, h, opts, 1001);
  const double ball_measure = core.measure();
  const double proxy = weight * ball_measure * ball_measure * (h(in.z1) - h(in.z2));

  CounterexampleReport r;
  r.construction = "kernel_monotonicity";
  r.parameters = {{"dim", n}, {"eps", in.eps}, {"R", R}, {"a", in.a}, {"b", in.b}, {"|z1|", r1}, {"|z2|", r2}};
  r.terms = {{"psi_ab", weight},
             {"near_pair_integral", near.value},
             {"far_pair_integral", far.value},
             {"small_eps_proxy", proxy},
             {"symmetrized_radius", r_star}};
  r.functions = {{"f", f}, {"g", g}, {"f*", f_star}};

  std::ostringstream label;
  label << "z1=" << format_number(r1) << ",z2=" << format_number(r2);
  auto row = compare(label.str(), in.eps, eval_riesz2(psi, f, g, h, opts), eval_riesz2(psi, f_star, g, h, opts));
  row.decomposition = weight * (near.value - far.value);
  row.consistent = agrees(-row.gap, row.decomposition, row) && std::abs(r_star - R) <= 1e-12 * std::max(1.0, R);
  r.rows.push_back(row);
  finish(r);
  return r;
}

MonotoneVerdict verify_kernel_radial_monotone(const Kernel& h, int n, std::size_t pair_count, std::uint64_t seed,
                                              double r_max) {
  unit_ball_volume(n);
  if (!(r_max > 0.0)) throw ConstructionError("r_max must be positive");
  Rng rng(seed);
  Point u1(n), u2(n), z1(n), z2(n), z1_turned(n);
  MonotoneVerdict v;
  bool first = true;
  for (std::size_t p = 0; p < pair_count; ++p) {
    double ra = r_max * (1.0 - rng.uniform());
    double rb = r_max * (1.0 - rng.uniform());
    if (ra > rb) std::swap(ra, rb);
    random_direction(rng, u1);
    random_direction(rng, u2);
    for (int c = 0; c < n; ++c) {
      z1[c] = ra * u1[c];
      z2[c] = rb * u2[c];
      z1_turned[c] = ra * u2[c];
    }
    double h1 = h(z1);
    double diff = h1 - h(z2);
    if (first || diff < v.min_difference) {
      v.min_difference = diff;
      v.z1 = z1;
      v.z2 = z2;
      first = false;
    }
    v.radial_defect = std::max(v.radial_defect, std::abs(h1 - h(z1_turned)));
    ++v.pairs;
  }
  v.passed = v.min_difference >= -kViolationTolerance && v.radial_defect <= kViolationTolerance;
  return v;
}

}  // namespace rlab
