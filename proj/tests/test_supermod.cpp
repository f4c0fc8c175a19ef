#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rlab/errors.hpp"
#include "rlab/supermod.hpp"

using namespace rlab;

namespace {

Integrand F(const char* s, std::size_t m = 2) { return Integrand::parse(s, m); }

}  // namespace

TEST_CASE("check_supermodular examples") {
  CHECK(check_supermodular(F("x1*x2")).passed);

  auto mx = check_supermodular(F("max(x1,x2)"), LatticeSpec{1.0, 1.0, {1.0}});
  CHECK_FALSE(mx.passed);
  CHECK(mx.worst.y == Point{0.0, 0.0});
  CHECK(mx.worst.h == 1.0);
  CHECK(mx.worst.k == 1.0);
  CHECK(mx.worst.delta == -1.0);

  // On the lattice {0, 1}^2 the smallest slack of x1 x2 - x1^2 x2^2 sits at
  // y = (1, 1): F(2,2) + F(1,1) - F(2,1) - F(1,2) = -12 + 0 + 2 + 2.
  auto poly = check_supermodular(F("x1*x2 - x1^2*x2^2"), LatticeSpec{1.0, 0.5, {0.5, 1.0}});
  CHECK_FALSE(poly.passed);
  CHECK(poly.worst.y == Point{1.0, 1.0});
  CHECK(poly.worst.h == 1.0);
  CHECK(poly.worst.k == 1.0);
  CHECK(poly.worst.delta == -8.0);
  CHECK(poly.worst.i == 0);
  CHECK(poly.worst.j == 1);

  // The default lattice reaches further out, where the slack is smaller still.
  auto wide = check_supermodular(F("x1*x2 - x1^2*x2^2"));
  CHECK_FALSE(wide.passed);
  CHECK(wide.worst.delta < -8.0);
}

TEST_CASE("check_strict_supermodular examples") {
  CHECK(check_strict_supermodular(F("x1*x2")).passed);
  auto mn = check_strict_supermodular(F("min(x1,x2)"));
  CHECK_FALSE(mn.passed);
  CHECK(std::abs(mn.worst.delta) <= kViolationTolerance);
  // the documented zero-slack quadruple
  CHECK(supermodular_delta(F("min(x1,x2)"), 0, 1, Point{0.0, 1.0}, 1.0, 1.0) == 0.0);
  auto mx = check_strict_supermodular(F("max(x1,x2)"));
  CHECK_FALSE(mx.passed);
  CHECK(mx.worst.delta < 0.0);
}

TEST_CASE("lattice validation and error propagation") {
  CHECK_THROWS_AS(check_supermodular(F("x1*x2"), LatticeSpec{1.0, 2.0, {1.0}}), ConstructionError);
  CHECK_THROWS_AS(check_supermodular(F("x1*x2"), LatticeSpec{1.0, 0.5, {0.0}}), ConstructionError);
  CHECK_THROWS_AS(check_supermodular(F("x1", 1)), ConstructionError);
  try {
    check_supermodular(F("log(x1)*x2"));
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    CHECK(std::string(e.what()).find("y=") != std::string::npos);
  }
}

TEST_CASE("three-coordinate scans cover every pair") {
  auto v = check_supermodular(F("x1*x2 + x2*x3 - 2*x1*x3", 3), LatticeSpec{1.0, 1.0, {1.0}});
  CHECK_FALSE(v.passed);
  CHECK(v.worst.i == 0);
  CHECK(v.worst.j == 2);
  CHECK(v.worst.delta == -2.0);
}

TEST_CASE("witness self-consistency") {
  for (const char* s : {"x1*x2 - x1^2*x2^2", "max(x1,x2)", "-x1*x2", "sqrt(x1 + x2)", "x1*x2*exp(-x1*x2)"}) {
    auto f = F(s);
    auto v = check_supermodular(f);
    CHECK(std::abs(supermodular_delta(f, v.worst) - v.worst.delta) <= 1e-12);
  }
}

TEST_CASE("coordinate-pair symmetry of the slack") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  auto f = F("x1*x2^2 - x3*x1^3 + exp(-x2*x3)", 3);
  for (int t = 0; t < 200; ++t) {
    Point y{u(gen), u(gen), u(gen)};
    double h = u(gen) + 0.01, k = u(gen) + 0.01;
    CHECK(supermodular_delta(f, 0, 2, y, h, k) == doctest::Approx(supermodular_delta(f, 2, 0, y, k, h)).epsilon(1e-14));
  }
}

TEST_CASE("mixed-difference check") {
  auto one = check_c2_supermodular(F("x1*x2"));
  CHECK(one.passed);
  CHECK(one.minimum == doctest::Approx(1.0).epsilon(1e-6));

  // cross derivative 1 - 4 x y is -3 at (1, 1)
  auto poly = check_c2_supermodular(F("x1*x2 - x1^2*x2^2"), LatticeSpec{1.0, 1.0, {1.0}});
  CHECK_FALSE(poly.passed);
  CHECK(poly.location == Point{1.0, 1.0});
  CHECK(poly.minimum == doctest::Approx(-3.0).epsilon(1e-6));

  auto e = check_c2_supermodular(F("exp(x1+x2)"));
  CHECK(e.passed);
  CHECK(e.minimum > 0.0);
  CHECK_THROWS_AS(check_c2_supermodular(F("x1*x2"), {}, 0.0), ConstructionError);
}

TEST_CASE("mixed-difference and lattice verdicts agree on smooth integrands") {
  const char* suite[] = {"x1*x2",         "exp(x1+x2)",      "x1*x2 - x1^2*x2^2", "-x1*x2",
                         "(x1+x2)^2",     "x1^2 + x2^2",     "x1*x2*exp(-x1*x2)", "log(1+x1*x2)",
                         "sqrt(1+x1*x2)", "-(x1 + x2)^2"};
  for (const char* s : suite) {
    auto f = F(s);
    bool lattice = check_supermodular(f).passed;
    bool c2 = check_c2_supermodular(f).passed;
    CHECK_MESSAGE(lattice == c2, s);
  }
}

TEST_CASE("scan result is independent of the thread count") {
  auto f = F("x1*x2*exp(-x1*x2) + 0.1*min(x1, x2)");
  auto a = check_supermodular(f, {}, ScanOptions{1});
  for (unsigned t : {2u, 3u, 8u}) {
    auto b = check_supermodular(f, {}, ScanOptions{t});
    CHECK(b.worst.delta == a.worst.delta);
    CHECK(b.worst.y == a.worst.y);
    CHECK(b.worst.i == a.worst.i);
    CHECK(b.worst.h == a.worst.h);
    CHECK(b.worst.k == a.worst.k);
  }
}
