#include "rlab/lattice.hpp"

#include <cmath>

#include "rlab/errors.hpp"

namespace rlab {

void LatticeSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConstructionError("lattice step must be positive");
  if (!(y_max >= step) || !std::isfinite(y_max)) throw ConstructionError("lattice requires step <= y_max");
  if (increments.empty()) throw ConstructionError("lattice needs at least one increment");
  for (double h : increments) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConstructionError("lattice increments must be positive");
  }
}

std::vector<double> LatticeSpec::values() const {
  validate();
  auto count = static_cast<std::size_t>(std::floor(y_max / step * (1.0 + 1e-12))) + 1;
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = static_cast<double>(k) * step;
  return v;
}

std::size_t LatticeSpec::point_count(std::size_t m) const {
  std::size_t per_axis = values().size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= per_axis;
  return total;
}

void LatticeSpec::point(std::size_t index, std::span<const double> values, std::span<double> out) const {
  for (auto& coord : out) {
    coord = values[index % values.size()];
    index /= values.size();
  }
}

}  // namespace rlab
