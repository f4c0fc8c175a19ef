#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rlab/expr.hpp"
#include "rlab/lattice.hpp"
#include "rlab/regions.hpp"

namespace rlab {

/// Values on a tensor grid; evaluated by multilinear interpolation and
/// clamped to the boundary values outside the grid.
struct GridTable {
  std::vector<std::vector<double>> axes;  // strictly increasing breakpoints per coordinate
  std::vector<double> values;             // row-major, last coordinate fastest
};

/// F : [0, inf)^m -> R, either a parsed expression in x1..xm or a table.
class Integrand {
 public:
  static Integrand parse(std::string_view text, std::size_t arity);
  static Integrand tabulated(GridTable table);

  std::size_t arity() const { return arity_; }
  double operator()(std::span<const double> y) const;

  /// Expression source, or "table" for tabulated integrands.
  std::string describe() const;
  const Expression* expression() const { return std::get_if<Expression>(&body_); }

 private:
  Integrand(std::size_t arity, std::variant<Expression, GridTable> body) : arity_(arity), body_(std::move(body)) {}

  std::size_t arity_;
  std::variant<Expression, GridTable> body_;
};

enum class TableMode { Step, Linear };

/// Radial kernels j(|x - y|) and general fields h(x - y).
class Kernel {
 public:
  enum class Form { RadialExpression, IndicatorBall, RadialTable, Field };

  /// Expression in the variable r, evaluated on (0, inf).
  static Kernel radial(std::string_view text);
  /// j(r) = 1 for r < R, 0 otherwise.
  static Kernel indicator(double radius);
  /// Step mode is right-continuous: j(r) = values[k] on [r_k, r_{k+1}),
  /// values[0] below r_0 and values.back() beyond the last breakpoint.
  /// Linear mode interpolates and clamps.
  static Kernel radial_table(std::vector<double> breakpoints, std::vector<double> values, TableMode mode);
  /// Expression in x1..xn, evaluated at the displacement x - y.
  static Kernel field(std::string_view text);

  Form form() const { return form_; }
  bool is_radial() const { return form_ != Form::Field; }

  /// j(r); throws HypothesisViolated for field kernels.
  double radial_value(double r) const;

  /// Kernel at a displacement vector.
  double operator()(std::span<const double> displacement) const;

  double indicator_radius() const { return radius_; }

  /// Radii where a radial kernel may be discontinuous or kinked.
  std::vector<double> radial_breakpoints() const;

  std::string describe() const;

  const Expression* expression() const { return expr_ ? &*expr_ : nullptr; }
  const std::vector<double>& table_breakpoints() const { return breakpoints_; }
  const std::vector<double>& table_values() const { return values_; }
  TableMode table_mode() const { return mode_; }

 private:
  Kernel() = default;

  Form form_ = Form::IndicatorBall;
  double radius_ = 0.0;
  std::optional<Expression> expr_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  TableMode mode_ = TableMode::Step;
};

struct HyperplaneCheck {
  bool vanishes = true;
  Point witness;       // violating probe point when !vanishes
  double value = 0.0;  // F(witness)
};

inline constexpr double kZeroTolerance = 1e-12;

/// Probes F(y) == 0 (within kZeroTolerance) at every lattice point with at
/// least one zero coordinate; reports the first violation in lattice order.
HyperplaneCheck vanishes_on_hyperplanes(const Integrand& f,
                                        const LatticeSpec& probe = LatticeSpec::hyperplane_probe());

/// Throws HypothesisViolated describing the witness when the check fails.
void require_vanishes_on_hyperplanes(const Integrand& f);

}  // namespace rlab
