#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "rlab/integrand.hpp"
#include "rlab/simplefn.hpp"

namespace rlab {

enum class Method { Exact1D, ClosedForm, MonteCarlo };

std::string to_string(Method m);

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for exact and closed-form paths
  Method method = Method::Exact1D;
  std::size_t samples = 0;  // Monte Carlo sample pairs per region pair
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20090601;

struct MonteCarloOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  /// Use sampling even where a 1D exact path exists.
  bool force_monte_carlo = false;
};

/// Hardy-Littlewood functional  int F(u_1(x), ..., u_m(x)) dx.
///
/// Exact: the supports are cut into cells on which every u_i is constant.
/// 1D uses a breakpoint sweep. In 2D/3D every piece must be a ball, an
/// annulus or a box (or a union of those); concentric balls and annuli are
/// swept radially, identical boxes form one cell, and the resulting families
/// must be mutually disjoint, otherwise UnsupportedGeometry.
/// Throws HypothesisViolated if F does not vanish on the hyperplane probe.
IntegralEstimate eval_hl(const Integrand& f, std::span<const SimpleFunction> u);

/// int_A int_B k(x - y) dy dx. In 1D the double integral reduces to
/// int w(s) k(s) ds with the piecewise-linear overlap profile w; piecewise
/// constant kernels integrate in closed form, others by adaptive quadrature
/// on the linear pieces. Otherwise Monte Carlo with the substream
/// (opts.seed, stream).
IntegralEstimate kernel_pair_integral(const Region& a, const Region& b, const Kernel& k,
                                      const MonteCarloOptions& opts = {}, std::uint64_t stream = 0);

/// Two-function Riesz functional  int int Psi(f(x), g(y)) k(x - y) dx dy,
/// summed over piece pairs. Monte Carlo standard errors add in quadrature.
IntegralEstimate eval_riesz2(const Integrand& psi, const SimpleFunction& f, const SimpleFunction& g,
                             const Kernel& k, const MonteCarloOptions& opts = {});

/// h(t) = int_{B_eps(0)} j(|x - y|) dy at |x| = t.
double ball_convolution_H(const Kernel& k, double eps, int n, double t);

/// I(t) = int_{B_t(0)} H - int_{B_t(z)} H, computed as a one-dimensional
/// radial integral of h against the sphere-overlap weights.
double ball_difference_I(const Kernel& k, double eps, std::span<const double> z, double t);

/// n omega_n int_{t - |z|}^{t + |z|} s^{n-1} h(s) ds, an upper bound on I(t)
/// for t > |z|.
double ball_difference_tail_bound(const Kernel& k, double eps, std::span<const double> z, double t);

/// Probes the kernel on a geometric grid r in [1e-3, r_max]: throws
/// HypothesisViolated if j is identically zero or increases, LimitViolated
/// if r^{n-1} j(r) has not decayed to 1% of its grid maximum at r_max.
/// r_max is 1e3, or ten times the largest kernel breakpoint if larger.
void check_kernel_hypotheses(const Kernel& k, int n);

struct EpsT0 {
  double eps;
  double t0;
};

/// t0 > 2 eps and sup{j(t) : |t - t0| <= eps} < inf{j(s) : 0 < s <= eps},
/// both sides sampled densely.
bool verify_eps_t0(const Kernel& k, EpsT0 candidate);

/// Runs check_kernel_hypotheses, then searches a fixed candidate list.
/// Throws NoStrictDecreaseFound when no candidate passes verify_eps_t0.
EpsT0 find_eps_t0(const Kernel& k, int n);

}  // namespace rlab
