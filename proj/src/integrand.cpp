#include "rlab/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

void check_increasing(const std::vector<double>& axis, const char* what) {
  if (axis.empty()) throw ConstructionError(std::string(what) + " needs at least one breakpoint");
  for (std::size_t k = 0; k < axis.size(); ++k) {
    if (!std::isfinite(axis[k])) throw ConstructionError(std::string(what) + " breakpoints must be finite");
    if (k > 0 && !(axis[k - 1] < axis[k])) {
      throw ConstructionError(std::string(what) + " breakpoints must be strictly increasing");
    }
  }
}

// Index of the cell [axis[k], axis[k+1]) holding t, and the local weight.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double t) {
  if (axis.size() == 1 || t <= axis.front()) return {0, 0.0};
  if (t >= axis.back()) return {axis.size() - 2, 1.0};
  auto k = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), t) - axis.begin()) - 1;
  return {k, (t - axis[k]) / (axis[k + 1] - axis[k])};
}

double interpolate(const GridTable& g, std::span<const double> y) {
  const std::size_t m = g.axes.size();
  std::vector<std::size_t> base(m);
  std::vector<double> weight(m);
  for (std::size_t i = 0; i < m; ++i) std::tie(base[i], weight[i]) = locate(g.axes[i], y[i]);

  double result = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << m); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
      bool upper = (corner >> i) & 1u;
      std::size_t idx = base[i] + (upper && g.axes[i].size() > 1 ? 1 : 0);
      w *= upper ? weight[i] : 1.0 - weight[i];
      flat = flat * g.axes[i].size() + idx;
    }
    if (w != 0.0) result += w * g.values[flat];
  }
  return result;
}

}  // namespace

Integrand Integrand::parse(std::string_view text, std::size_t arity) {
  if (arity < 1) throw ConstructionError("integrand arity must be positive");
  return Integrand(arity, Expression::parse(text, indexed_variables(arity)));
}

Integrand Integrand::tabulated(GridTable table) {
  if (table.axes.empty()) throw ConstructionError("table needs at least one axis");
  std::size_t size = 1;
  for (const auto& axis : table.axes) {
    check_increasing(axis, "table axis");
    size *= axis.size();
  }
  if (table.values.size() != size) throw ConstructionError("table value count does not match its axes");
  for (double v : table.values) {
    if (!std::isfinite(v)) throw ConstructionError("table values must be finite");
  }
  std::size_t m = table.axes.size();
  return Integrand(m, std::move(table));
}

double Integrand::operator()(std::span<const double> y) const {
  if (y.size() != arity_) throw EvaluationError("integrand of arity " + std::to_string(arity_) + " applied to " +
                                                std::to_string(y.size()) + " values");
  if (const auto* e = std::get_if<Expression>(&body_)) return (*e)(y);
  return interpolate(std::get<GridTable>(body_), y);
}

std::string Integrand::describe() const {
  if (const auto* e = std::get_if<Expression>(&body_)) return e->source();
  return "table";
}

Kernel Kernel::radial(std::string_view text) {
  Kernel k;
  k.form_ = Form::RadialExpression;
  k.expr_ = Expression::parse(text, {"r"});
  return k;
}

Kernel Kernel::indicator(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConstructionError("indicator kernel radius must be positive");
  Kernel k;
  k.form_ = Form::IndicatorBall;
  k.radius_ = radius;
  return k;
}

Kernel Kernel::radial_table(std::vector<double> breakpoints, std::vector<double> values, TableMode mode) {
  check_increasing(breakpoints, "kernel table");
  if (breakpoints.front() < 0.0) throw ConstructionError("kernel table breakpoints must be nonnegative");
  if (values.size() != breakpoints.size()) throw ConstructionError("kernel table needs one value per breakpoint");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConstructionError("kernel table values must be finite");
  }
  Kernel k;
  k.form_ = Form::RadialTable;
  k.breakpoints_ = std::move(breakpoints);
  k.values_ = std::move(values);
  k.mode_ = mode;
  return k;
}

Kernel Kernel::field(std::string_view text) {
  Kernel k;
  k.form_ = Form::Field;
  k.expr_ = Expression::parse(text, indexed_variables(kMaxDimension));
  return k;
}

double Kernel::radial_value(double r) const {
  switch (form_) {
    case Form::IndicatorBall:
      return r < radius_ ? 1.0 : 0.0;
    case Form::RadialExpression: {
      double v[1] = {r};
      return (*expr_)(v);
    }
    case Form::RadialTable: {
      if (mode_ == TableMode::Step) {
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
        if (it == breakpoints_.begin()) return values_.front();
        return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
      }
      auto [k, w] = locate(breakpoints_, r);
      if (breakpoints_.size() == 1) return values_.front();
      return (1.0 - w) * values_[k] + w * values_[k + 1];
    }
    case Form::Field:
      break;
  }
  throw HypothesisViolated("kernel " + describe() + " is a general field, not a radial kernel");
}

double Kernel::operator()(std::span<const double> displacement) const {
  if (form_ == Form::Field) {
    if (expr_->max_variable_index() >= static_cast<int>(displacement.size())) {
      throw EvaluationError("field kernel " + describe() + " references x" +
                            std::to_string(expr_->max_variable_index() + 1) + " in dimension " +
                            std::to_string(displacement.size()));
    }
    return (*expr_)(displacement);
  }
  double s = 0.0;
  for (double d : displacement) s += d * d;
  return radial_value(std::sqrt(s));
}

std::vector<double> Kernel::radial_breakpoints() const {
  switch (form_) {
    case Form::IndicatorBall:
      return {radius_};
    case Form::RadialTable:
      return breakpoints_;
    default:
      return {};
  }
}

std::string Kernel::describe() const {
  std::ostringstream os;
  switch (form_) {
    case Form::IndicatorBall:
      os << "indicator(R=" << radius_ << ")";
      break;
    case Form::RadialExpression:
      os << "radial(" << expr_->source() << ")";
      break;
    case Form::RadialTable:
      os << "table(" << breakpoints_.size() << " breakpoints)";
      break;
    case Form::Field:
      os << "field(" << expr_->source() << ")";
      break;
  }
  return os.str();
}

HyperplaneCheck vanishes_on_hyperplanes(const Integrand& f, const LatticeSpec& probe) {
  const auto values = probe.values();
  const std::size_t m = f.arity();
  const std::size_t count = probe.point_count(m);
  Point y(m);
  for (std::size_t idx = 0; idx < count; ++idx) {
    probe.point(idx, values, y);
    if (std::none_of(y.begin(), y.end(), [](double c) { return c == 0.0; })) continue;
    double v = f(y);
    if (std::abs(v) > kZeroTolerance) return {false, y, v};
  }
  return {};
}

void require_vanishes_on_hyperplanes(const Integrand& f) {
  auto check = vanishes_on_hyperplanes(f);
  if (check.vanishes) return;
  std::ostringstream os;
  os << "integrand " << f.describe() << " does not vanish on coordinate hyperplanes: F(";
  for (std::size_t i = 0; i < check.witness.size(); ++i) os << (i ? "," : "") << check.witness[i];
  os << ") = " << check.value;
  throw HypothesisViolated(os.str());
}

}  // namespace rlab
