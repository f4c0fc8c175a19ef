#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rlab/errors.hpp"
#include "rlab/necessity.hpp"
#include "support.hpp"

using namespace rlab;

namespace {

SupermodularityWitness quad(Point y, double h = 1.0, double k = 1.0, std::size_t i = 0, std::size_t j = 1) {
  SupermodularityWitness w;
  w.i = i;
  w.j = j;
  w.y = std::move(y);
  w.h = h;
  w.k = k;
  return w;
}

SimpleFunction step1(std::vector<std::tuple<double, double, double>> parts) {
  std::vector<Piece> pieces;
  for (auto [v, lo, hi] : parts) pieces.push_back({v, Region::interval(lo, hi)});
  return SimpleFunction(1, std::move(pieces));
}

double poly(const std::vector<double>& y) { return y[0] * y[1] - y[0] * y[0] * y[1] * y[1]; }

const ReportRow& row_at(const CounterexampleReport& r, double parameter) {
  for (const auto& row : r.rows) {
    if (row.parameter == parameter) return row;
  }
  FAIL("missing row");
  return r.rows.front();
}

}  // namespace

TEST_CASE("Hardy-Littlewood construction on the polynomial witness") {
  auto F = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  auto r = build_hl_counterexample(F, quad({1, 1}), 1);
  REQUIRE(r.rows.size() == 1);
  // Oracle: u1 = 1 on [0,1), 2 on [1,2); u2 = 2 on [0,1), 1 on [1,2).
  // Symmetrized: both are 2 on (-1/2, 1/2) and 1 on 1/2 < |x| < 1.
  std::vector<SimpleFunction> u{step1({{1, 0, 1}, {2, 1, 2}}), step1({{2, 0, 1}, {1, 1, 2}})};
  std::vector<SimpleFunction> us{step1({{2, -0.5, 0.5}, {1, -1, -0.5}, {1, 0.5, 1}}),
                                 step1({{2, -0.5, 0.5}, {1, -1, -0.5}, {1, 0.5, 1}})};
  double lhs = testing::riemann_hl_1d(poly, u, -1, 3, 4096);
  double rhs = testing::riemann_hl_1d(poly, us, -2, 2, 4096);
  CHECK(lhs == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(rhs == doctest::Approx(-12.0).epsilon(1e-12));
  CHECK(r.rows[0].lhs.value == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(r.rows[0].rhs.value == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(std::abs(r.gap - 8.0) <= 1e-9);
  CHECK(r.certified);
  CHECK(r.consistent);
  CHECK(r.witness->delta == -8.0);
}

TEST_CASE("Hardy-Littlewood construction pads extra coordinates") {
  auto F = Integrand::parse("x3*(x1*x2 - x1^2*x2^2)", 3);
  auto r = build_hl_counterexample(F, quad({1, 1, 1}), 1);
  CHECK(std::abs(r.gap - 8.0) <= 1e-9);
  CHECK(r.certified);
  for (int n : {2, 3}) {
    auto rn = build_hl_counterexample(F, quad({1, 1, 1}), n);
    CHECK(std::abs(rn.gap - 8.0) <= 1e-9);
    CHECK(rn.consistent);
  }
}

TEST_CASE("Hardy-Littlewood construction gates") {
  CHECK_THROWS_AS(build_hl_counterexample(Integrand::parse("x1*x2", 2), quad({1, 1}), 1), NotAWitness);
  CHECK_THROWS_AS(build_hl_counterexample(Integrand::parse("max(x1,x2)", 2), quad({0, 0}), 1), HypothesisViolated);
  CHECK_THROWS_AS(build_hl_counterexample(Integrand::parse("x1*x2 - x1^2*x2^2", 2), quad({1, 1, 1}), 1),
                  ConstructionError);
}

TEST_CASE("every lattice witness of a hyperplane-vanishing integrand yields a certified gap") {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  int built = 0;
  for (int t = 0; t < 40; ++t) {
    // x1 x2 (c0 + c1 x1 + c2 x2 + c3 x1 x2) vanishes on both axes
    std::string s = "x1*x2*(" + std::to_string(coef(gen)) + " + " + std::to_string(coef(gen)) + "*x1 + " +
                    std::to_string(coef(gen)) + "*x2 + " + std::to_string(coef(gen)) + "*x1*x2)";
    auto F = Integrand::parse(s, 2);
    REQUIRE(vanishes_on_hyperplanes(F).vanishes);
    auto v = check_supermodular(F);
    if (v.passed) continue;
    auto r = build_hl_counterexample(F, v.worst, 1);
    CHECK(std::abs(r.gap + v.worst.delta) <= 1e-9 * std::max(1.0, std::abs(v.worst.delta)));
    CHECK(r.rows[0].lhs.value > r.rows[0].rhs.value);
    CHECK(r.certified);
    ++built;
  }
  CHECK(built > 10);
}

TEST_CASE("strict supermodularity gives a strict gain on the same geometry") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (const char* s : {"x1*x2", "x1*x2 + x1^2*x2^2", "exp(x1*x2) - 1"}) {
    auto F = Integrand::parse(s, 2);
    REQUIRE(check_strict_supermodular(F).passed);
    for (int t = 0; t < 20; ++t) {
      double a = u(gen), b = a + u(gen), c = u(gen), d = c + u(gen);
      std::vector<SimpleFunction> v{step1({{a, 0, 1}, {b, 1, 2}}), step1({{d, 0, 1}, {c, 1, 2}})};
      std::vector<SimpleFunction> vs{rearrange(v[0]), rearrange(v[1])};
      CHECK(eval_hl(F, vs).value - eval_hl(F, v).value > 0.0);
    }
  }
}

TEST_CASE("Riesz construction with the indicator kernel") {
  auto psi = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  RieszOptions opts;
  opts.eps_t0 = EpsT0{0.25, 1.5};
  opts.radii = {2.0, 3.0};
  auto r = build_riesz_counterexample(psi, quad({1, 1}), Kernel::indicator(1.0), 1, opts);
  REQUIRE(r.rows.size() == 2);
  const auto& r2 = row_at(r, 2.0);
  const auto& r3 = row_at(r, 3.0);
  CHECK(std::abs(-r2.gap - (-2.5)) <= 1e-8);
  CHECK(std::abs(-r3.gap - (-2.0)) <= 1e-8);
  CHECK(std::abs(r2.decomposition - (-2.5)) <= 1e-8);
  CHECK(std::abs(r3.decomposition - (-2.0)) <= 1e-8);
  CHECK(std::abs(r2.i_eps - 0.25) <= 1e-9);
  CHECK(std::abs(r2.i_r - 0.25) <= 1e-9);
  CHECK(r3.i_r == 0.0);
  CHECK(r.certified);
  CHECK(r.consistent);

  // default search and radii
  auto d = build_riesz_counterexample(psi, quad({1, 1}), Kernel::indicator(1.0), 1);
  CHECK(d.certified);
  CHECK(d.consistent);
  CHECK(d.rows.size() == 4);
}

TEST_CASE("Riesz construction with smooth and tabulated kernels") {
  auto psi = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  std::vector<Kernel> kernels{Kernel::radial("exp(-r)"), Kernel::radial("1/(1+r^2)"),
                              Kernel::radial_table({0.0, 0.5, 1.5}, {1.0, 0.5, 0.0}, TableMode::Step)};
  for (const auto& k : kernels) {
    CHECK_NOTHROW(check_kernel_hypotheses(k, 1));
    auto r = build_riesz_counterexample(psi, quad({1, 1}), k, 1);
    CHECK(r.consistent);
    CHECK(r.certified);
    // rhs - lhs decreases towards delta I(eps) as R grows, and stays negative
    for (const auto& row : r.rows) {
      CHECK(row.i_eps > 0.0);
      CHECK(row.i_r >= -1e-9);
    }
  }
}

TEST_CASE("Riesz construction gates") {
  auto psi = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  CHECK_THROWS_AS(build_riesz_counterexample(Integrand::parse("x1*x2", 2), quad({1, 1}), Kernel::indicator(1), 1),
                  NotAWitness);
  CHECK_THROWS_AS(build_riesz_counterexample(Integrand::parse("max(x1,x2)", 2), quad({0, 0}), Kernel::indicator(1), 1),
                  HypothesisViolated);
  CHECK_THROWS_AS(build_riesz_counterexample(psi, quad({1, 1}), Kernel::radial("1"), 1), LimitViolated);
  RieszOptions bad;
  bad.eps_t0 = EpsT0{0.25, 0.8};
  CHECK_THROWS_AS(build_riesz_counterexample(psi, quad({1, 1}), Kernel::indicator(1), 1, bad), NoStrictDecreaseFound);
}

TEST_CASE("Riesz construction in the plane by Monte Carlo") {
  auto psi = Integrand::parse("x1*x2 - x1^2*x2^2", 2);
  RieszOptions opts;
  opts.eps_t0 = EpsT0{0.25, 1.5};
  opts.radii = {3.0};
  opts.monte_carlo.samples = 40000;
  auto r = build_riesz_counterexample(psi, quad({1, 1}), Kernel::indicator(1.0), 2, opts);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].lhs.method == Method::MonteCarlo);
  CHECK(r.rows[0].std_error > 0.0);
  CHECK(r.consistent);
  // I(R) vanishes once B_R covers both supports, so rhs - lhs = delta I(eps)
  CHECK(r.rows[0].i_r == 0.0);
  CHECK(r.rows[0].decomposition < 0.0);
}

TEST_CASE("kernel monotonicity construction") {
  auto psi = Integrand::parse("x1*x2", 2);
  MonotonicityInput in{{0.5}, {1.5}, 0.2, 1.0, 1.0};

  auto r = build_kernel_monotonicity_counterexample(psi, Kernel::field("min(abs(x1),2)"), in);
  // pair integrals: mean |x - y| over the boxes is 0.5 and 1.5, times 0.4^2
  double near = testing::riemann_pair_1d(0.3, 0.7, -0.2, 0.2, [](double s) { return std::min(std::abs(s), 2.0); }, 800);
  double far = testing::riemann_pair_1d(1.3, 1.7, -0.2, 0.2, [](double s) { return std::min(std::abs(s), 2.0); }, 800);
  CHECK(near == doctest::Approx(0.08).epsilon(1e-6));
  CHECK(far == doctest::Approx(0.24).epsilon(1e-6));
  CHECK(std::abs(-r.gap - (-0.16)) <= 1e-8);
  CHECK(r.certified);
  CHECK(r.consistent);

  auto dec = build_kernel_monotonicity_counterexample(psi, Kernel::field("1/(1+abs(x1))"), in);
  CHECK(-dec.gap >= 0.0);
  CHECK_FALSE(dec.certified);

  auto flat = build_kernel_monotonicity_counterexample(psi, Kernel::field("1 + 0*x1"), in);
  CHECK(std::abs(flat.gap) <= 1e-12);
  CHECK_FALSE(flat.certified);
}

TEST_CASE("kernel monotonicity construction gates") {
  auto psi = Integrand::parse("x1*x2", 2);
  auto h = Kernel::field("min(abs(x1),2)");
  CHECK_THROWS_AS(build_kernel_monotonicity_counterexample(psi, h, {{0.5}, {1.5}, 0.6}), ConstructionError);
  CHECK_THROWS_AS(build_kernel_monotonicity_counterexample(psi, h, {{1.5}, {0.5}, 0.2}), ConstructionError);
  CHECK_THROWS_AS(build_kernel_monotonicity_counterexample(psi, h, {{0.0}, {0.5}, 0.1}), ConstructionError);
  CHECK_THROWS_AS(build_kernel_monotonicity_counterexample(Integrand::parse("max(x1,x2)", 2), h, {{0.5}, {1.5}, 0.2}),
                  HypothesisViolated);
  CHECK_THROWS_AS(
      build_kernel_monotonicity_counterexample(Integrand::parse("x1*x2 - x1^2*x2^2", 2), h, {{0.5}, {1.5}, 0.2}),
      HypothesisViolated);
  CHECK_THROWS_AS(build_kernel_monotonicity_counterexample(Integrand::parse("0*x1*x2", 2), h, {{0.5}, {1.5}, 0.2}),
                  HypothesisViolated);
}

TEST_CASE("radial monotonicity verifier") {
  auto ok = verify_kernel_radial_monotone(Kernel::field("1/(1+abs(x1))"), 1, 2000, 1);
  CHECK(ok.passed);
  auto bad = verify_kernel_radial_monotone(Kernel::field("min(abs(x1),2)"), 1, 2000, 1);
  CHECK_FALSE(bad.passed);
  CHECK(bad.min_difference <= -1.0);
  double z1[1] = {0.5}, z2[1] = {1.5};
  CHECK(Kernel::field("min(abs(x1),2)")(z1) - Kernel::field("min(abs(x1),2)")(z2) == -1.0);
  auto zero = verify_kernel_radial_monotone(Kernel::field("abs(x1)-abs(x1)"), 1, 500, 1);
  CHECK(zero.passed);
  CHECK(zero.min_difference == 0.0);

  auto radial = verify_kernel_radial_monotone(Kernel::field("exp(-(x1^2+x2^2))"), 2, 2000, 1);
  CHECK(radial.passed);
  CHECK(radial.radial_defect <= 1e-9);
  auto skew = verify_kernel_radial_monotone(Kernel::field("exp(-(x1^2+2*x2^2))"), 2, 2000, 1);
  CHECK_FALSE(skew.passed);
  CHECK(skew.radial_defect > 1e-3);
}

TEST_CASE("construction certifies exactly when the kernel grows from z1 to z2") {
  auto psi = Integrand::parse("x1*x2", 2);
  struct Case {
    const char* h;
    Point z1, z2;
    double eps;
  };
  std::vector<Case> suite{
      {"min(abs(x1),2)", {0.5}, {1.5}, 0.2},
      {"1/(1+abs(x1))", {0.5}, {1.5}, 0.2},
      {"exp(-x1^2)", {-0.4}, {1.2}, 0.1},
      {"abs(x1)^2", {0.3}, {-1.0}, 0.1},
      {"sqrt(x1^2+x2^2)", {0.5, 0.0}, {0.0, 1.5}, 0.2},
      {"exp(-(x1^2+x2^2))", {0.5, 0.0}, {0.0, 1.5}, 0.2},
  };
  MonteCarloOptions mc;
  mc.samples = 40000;
  for (const auto& c : suite) {
    auto h = Kernel::field(c.h);
    auto r = build_kernel_monotonicity_counterexample(psi, h, {c.z1, c.z2, c.eps}, mc);
    bool grows = h(c.z1) - h(c.z2) < -kViolationTolerance;
    CHECK_MESSAGE(r.certified == grows, c.h);
    CHECK(r.consistent);
  }
}
