#include "lrl/grid.hpp"

#include <cmath>

namespace lrl {

double Grid::h() const {
  if (kind == GridKind::uniform) return (r_max - r_min) / (npoints - 1);
  return (std::log(r_max) - std::log(r_min)) / (npoints - 1);
}

double Grid::node(int i) const {
  if (i == npoints - 1) return r_max;
  if (kind == GridKind::uniform) return r_min + i * h();
  return std::exp(std::log(r_min) + i * h());
}

std::vector<double> Grid::nodes() const {
  std::vector<double> r(static_cast<std::size_t>(npoints));
  for (int i = 0; i < npoints; ++i) r[static_cast<std::size_t>(i)] = node(i);
  return r;
}

Grid Grid::with_points(int n) const { return make_grid(kind, r_min, r_max, n); }

Grid make_grid(GridKind kind, double r_min, double r_max, int npoints) {
  if (!(r_min > 0) || !(r_max > r_min) || !std::isfinite(r_max)) throw InvalidGrid("grid needs 0 < r_min < r_max");
  if (npoints < 100) throw InvalidGrid("grid needs at least 100 points");
  return Grid{kind, r_min, r_max, npoints};
}

Grid default_grid(double length_scale, int npoints) {
  if (!(length_scale > 0)) throw InvalidGrid("length scale must be positive");
  return make_grid(GridKind::log, 1e-9 * length_scale, 40 * length_scale, npoints);
}

}  // namespace lrl
