// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../support.hpp"
#include "rlab/cli.hpp"
#include "rlab/errors.hpp"
#include "rlab/necessity.hpp"

using namespace rlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

SupermodularityWitness quad(Point y, double h = 1.0, double k = 1.0) {
  SupermodularityWitness w;
  w.i = 0;
  w.j = 1;
  w.y = std::move(y);
  w.h = h;
  w.k = k;
  return w;
}

// Random 2D simple function: up to three pieces, balls or boxes placed on
// disjoint cells of a coarse grid so that no overlap check can fail.
SimpleFunction random_function_2d(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> count(1, 3), cell(0, 3), shape(0, 1);
  std::uniform_real_distribution<double> value(0.5, 5.0), size(0.3, 0.9);
  std::vector<Piece> pieces;
  std::vector<std::pair<int, int>> used;
  int k = count(gen);
  while (static_cast<int>(pieces.size()) < k) {
    std::pair<int, int> c{cell(gen), cell(gen)};
    if (std::find(used.begin(), used.end(), c) != used.end()) continue;
    used.push_back(c);
    Point center{2.0 * c.first - 3.0, 2.0 * c.second - 3.0};
    double s = size(gen);
    if (shape(gen) == 0) {
      pieces.push_back({value(gen), Region::ball(center, s)});
    } else {
      pieces.push_back({value(gen), Region::box({center[0] - s, center[1] - s}, {center[0] + s, center[1] + s})});
    }
  }
  return SimpleFunction(2, std::move(pieces));
}

Outcome equimeasurability() {
  Outcome o;
  std::mt19937_64 gen(1001);
  std::uniform_real_distribution<double> level(0.0, 10.5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    auto f = testing::random_function_1d(gen, 8);
    auto s = rearrange(f);
    for (int q = 0; q < 20; ++q) {
      double a = level(gen), b = level(gen);
      if (a > b) std::swap(a, b);
      if (a == b) b += 0.5;
      worst = std::max(worst, std::abs(layer_measure(f, a, b) - layer_measure(s, a, b)));
    }
    o.expect(same_radial_profile(rearrange(s), s, 1e-12), "idempotence failed on function " + std::to_string(t));
    double prev = std::numeric_limits<double>::infinity();
    // radii of the level balls lie on a 1/128 grid; sample between them since the
    // open balls leave their boundary points at value 0
    for (int i = 0; i < 20 * 256; ++i) {
      double x = (i + 0.5) / 256.0;
      double p[1] = {x}, m[1] = {-x};
      o.expect(s(p) <= prev && s(m) == s(p), "radial monotonicity failed on function " + std::to_string(t));
      prev = s(p);
    }
  }
  o.expect(worst <= 1e-12, "layer measure mismatch " + fmt(worst));
  if (o.ok) o.detail = "200 functions x 20 layers, max layer-measure error " + fmt(worst);
  return o;
}

Outcome hl_sanity() {
  Outcome o;
  std::mt19937_64 gen(1002);
  double worst = -std::numeric_limits<double>::infinity();
  for (const char* s : {"x1*x2", "min(x1,x2)"}) {
    auto F = Integrand::parse(s, 2);
    for (int t = 0; t < 200; ++t) {
      std::vector<SimpleFunction> u{testing::random_function_1d(gen), testing::random_function_1d(gen)};
      std::vector<SimpleFunction> us{rearrange(u[0]), rearrange(u[1])};
      auto lhs = eval_hl(F, u);
      auto rhs = eval_hl(F, us);
      o.expect(lhs.method == Method::Exact1D && rhs.method == Method::Exact1D, "non-exact path");
      worst = std::max(worst, lhs.value - rhs.value);
      o.expect(lhs.value <= rhs.value + 1e-9, std::string(s) + " violated by " + fmt(lhs.value - rhs.value));
    }
  }
  if (o.ok) o.detail = "400 exact comparisons, max I(u) - I(u*) = " + fmt(worst);
  return o;
}

Outcome hl_counterexample() {
  Outcome o;
  auto F = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  auto r = build_hl_counterexample(F, quad({1, 1}), 1);
  o.expect(std::abs(r.rows[0].lhs.value + 4.0) <= 1e-9, "lhs " + fmt(r.rows[0].lhs.value));
  o.expect(std::abs(r.rows[0].rhs.value + 12.0) <= 1e-9, "rhs " + fmt(r.rows[0].rhs.value));
  o.expect(std::abs(r.gap - 8.0) <= 1e-9, "gap " + fmt(r.gap));

  std::mt19937_64 gen(1003);
  std::uniform_int_distribution<int> coef(-4, 4);
  int found = 0, tried = 0;
  while (found < 20 && tried < 2000) {
    ++tried;
    std::ostringstream s;
    s << "x1*x2*(" << coef(gen) << " + " << coef(gen) << "*x1 + " << coef(gen) << "*x2 + " << coef(gen)
      << "*x1*x2 + " << coef(gen) << "*x1^2)";
    auto P = Integrand::parse(s.str(), 2);
    if (!vanishes_on_hyperplanes(P).vanishes) continue;
    auto v = check_supermodular(P);
    if (v.passed) continue;
    ++found;
    auto c = build_hl_counterexample(P, v.worst, 1);
    double e1 = 1.0;
    o.expect(std::abs(c.gap + v.worst.delta * e1) <= 1e-9 * std::max(1.0, std::abs(v.worst.delta)),
             s.str() + ": gap " + fmt(c.gap) + " vs delta " + fmt(v.worst.delta));
    o.expect(c.gap > 0.0 && c.certified, s.str() + ": gap not positive");
  }
  o.expect(found == 20, "only " + std::to_string(found) + " violating integrands generated");
  if (o.ok) o.detail = "gap 8 reproduced; 20 random violating integrands certified";
  return o;
}

Outcome riesz_sanity() {
  Outcome o;
  auto psi = Integrand::parse("x1*x2", 2);
  auto k = Kernel::indicator(1.0);
  std::mt19937_64 gen(1004);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    auto f = testing::random_function_1d(gen, 5), g = testing::random_function_1d(gen, 5);
    auto lhs = eval_riesz2(psi, f, g, k);
    auto rhs = eval_riesz2(psi, rearrange(f), rearrange(g), k);
    o.expect(lhs.std_error == 0.0 && rhs.std_error == 0.0, "1D path not exact");
    worst = std::max(worst, lhs.value - rhs.value);
    o.expect(lhs.value <= rhs.value + 1e-9, "1D pair " + std::to_string(t) + " violated by " + fmt(lhs.value - rhs.value));
  }
  MonteCarloOptions mc;
  mc.samples = 20000;
  double worst_sigma = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10; ++t) {
    auto f = random_function_2d(gen), g = random_function_2d(gen);
    mc.seed = 500 + t;
    auto lhs = eval_riesz2(psi, f, g, k, mc);
    auto rhs = eval_riesz2(psi, rearrange(f), rearrange(g), k, mc);
    double se = std::hypot(lhs.std_error, rhs.std_error);
    o.expect(lhs.method == Method::MonteCarlo, "plane path is not Monte Carlo");
    worst_sigma = std::max(worst_sigma, (lhs.value - rhs.value) / se);
    o.expect(lhs.value <= rhs.value + 3.0 * se, "2D pair " + std::to_string(t) + " violated beyond 3 sigma");
  }
  if (o.ok) {
    o.detail = "100 exact 1D pairs (max J - J* = " + fmt(worst) + "), 10 Monte Carlo 2D pairs (max (J - J*) / sigma = " +
               fmt(worst_sigma) + ")";
  }
  return o;
}

Outcome riesz_counterexample() {
  Outcome o;
  auto k = Kernel::indicator(1.0);
  double z[1] = {1.5};
  double i1 = ball_difference_I(k, 0.25, z, 0.25), i2 = ball_difference_I(k, 0.25, z, 2.0),
         i3 = ball_difference_I(k, 0.25, z, 3.0);
  o.expect(std::abs(i1 - 0.25) <= 1e-9, "I(0.25) = " + fmt(i1));
  o.expect(std::abs(i2 - 0.25) <= 1e-9, "I(2) = " + fmt(i2));
  o.expect(i3 == 0.0, "I(3) = " + fmt(i3));

  RieszOptions opts;
  opts.eps_t0 = EpsT0{0.25, 1.5};
  opts.radii = {2.0, 3.0};
  auto r = build_riesz_counterexample(Integrand::parse("x1*x2 - x1^2*x2^2", 2), quad({1, 1}), k, 1, opts);
  const double expected[2] = {-2.5, -2.0};
  for (int i = 0; i < 2; ++i) {
    const auto& row = r.rows[i];
    double direct = row.rhs.value - row.lhs.value;
    o.expect(std::abs(direct - expected[i]) <= 1e-8, row.label + ": direct " + fmt(direct));
    o.expect(std::abs(row.decomposition - expected[i]) <= 1e-8, row.label + ": decomposition " + fmt(row.decomposition));
    o.expect(std::abs(direct - row.decomposition) <= 1e-8, row.label + ": paths disagree");
  }
  o.expect(r.certified && r.consistent, "violation not certified");
  if (o.ok) o.detail = "I = 0.25, 0.25, 0; rhs - lhs = -2.5 (R=2), -2 (R=3) on both paths";
  return o;
}

Outcome kernel_counterexample() {
  Outcome o;
  auto psi = Integrand::parse("x1*x2", 2);
  MonotonicityInput in{{0.5}, {1.5}, 0.2, 1.0, 1.0};
  auto r = build_kernel_monotonicity_counterexample(psi, Kernel::field("min(abs(x1),2)"), in);
  double d = r.rows[0].rhs.value - r.rows[0].lhs.value;
  double tol = r.rows[0].lhs.method == Method::MonteCarlo ? 4.0 * r.rows[0].std_error : 1e-8;
  o.expect(std::abs(d + 0.16) <= tol, "min(|x|,2): rhs - lhs = " + fmt(d));
  o.expect(r.certified, "min(|x|,2): violation not certified");
  auto s = build_kernel_monotonicity_counterexample(psi, Kernel::field("1/(1+abs(x1))"), in);
  double ds = s.rows[0].rhs.value - s.rows[0].lhs.value;
  o.expect(ds >= 0.0, "1/(1+|x|): rhs - lhs = " + fmt(ds));
  if (o.ok) o.detail = "min(|x|,2): rhs - lhs = " + fmt(d) + "; 1/(1+|x|): " + fmt(ds);
  return o;
}

Outcome gates() {
  Outcome o;
  try {
    find_eps_t0(Kernel::radial("1"), 1);
    o.expect(false, "constant kernel accepted");
  } catch (const LimitViolated&) {
  }
  auto hp = vanishes_on_hyperplanes(Integrand::parse("x1+x2", 2));
  o.expect(!hp.vanishes && hp.witness == Point{1.0, 0.0}, "x1 + x2 passed the hyperplane probe");
  try {
    RieszOptions opts;
    opts.eps_t0 = EpsT0{0.25, 1.5};
    build_riesz_counterexample(Integrand::parse("x1+x2", 2), quad({1, 1}), Kernel::indicator(1.0), 1, opts);
    o.expect(false, "x1 + x2 accepted by the Riesz construction");
  } catch (const NotAWitness&) {
    // x1 + x2 is modular, so no quadruple is a witness; the hyperplane gate is
    // exercised through the functional itself below.
  }
  try {
    auto box = SimpleFunction(1, {{1.0, Region::interval(0, 1)}});
    eval_riesz2(Integrand::parse("x1+x2", 2), box, box, Kernel::indicator(1.0));
    o.expect(false, "x1 + x2 accepted by the Riesz functional");
  } catch (const HypothesisViolated&) {
  }
  auto mn = Integrand::parse("min(x1,x2)", 2);
  auto st = check_strict_supermodular(mn);
  o.expect(!st.passed && std::abs(st.worst.delta) <= kViolationTolerance, "min(x1,x2) not flagged non-strict");
  o.expect(std::abs(supermodular_delta(mn, st.worst) - st.worst.delta) <= 1e-12, "non-strict quadruple inconsistent");
  if (o.ok) o.detail = "LimitViolated; hyperplane witness (1,0); min(x1,x2) non-strict with zero slack";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string data = RLAB_TEST_DATA;
  auto report = [&](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  std::vector<std::vector<std::string>> commands{
      {"demo", "prop33", "--config", data + "/prop33_plane.json", "--seed", "4242"},
      {"eval-riesz", "--integrand", "x1*x2", "--kernel", data + "/indicator.json", "--f", data + "/disc_family.json",
       "--g", data + "/disc_family.json", "--samples", "20000", "--seed", "4242"},
  };
  for (auto args : commands) {
    args.insert(args.end(), {"--threads", "1"});
    std::string base = report(args);
    o.expect(base.find("monte_carlo") != std::string::npos, "report is not a Monte Carlo report");
    for (const char* t : {"1", "2", "3", "8"}) {
      args.back() = t;
      o.expect(report(args) == base, args[0] + " differs with --threads " + t);
    }
  }
  if (o.ok) o.detail = "2 Monte Carlo reports identical across 1, 2, 3 and 8 threads";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"equimeasurability suite", equimeasurability},
      {"Hardy-Littlewood sufficiency sanity", hl_sanity},
      {"Hardy-Littlewood counterexample from a witness", hl_counterexample},
      {"Riesz sufficiency sanity", riesz_sanity},
      {"Riesz counterexample from a witness", riesz_counterexample},
      {"kernel monotonicity counterexample", kernel_counterexample},
      {"hypothesis gates", gates},
      {"determinism across thread counts", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << index << "] " << c.name << " -- " << o.detail << std::endl;
  }
  return failed;
}
