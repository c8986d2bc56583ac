#pragma once

#include <stdexcept>
#include <vector>

namespace lrl {

struct InvalidGrid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class GridKind { uniform, log };

/// Radial grid; for the log kind r_i = exp(u_i) with uniform u_i. Nodes include both ends.
struct Grid {
  GridKind kind = GridKind::log;
  double r_min = 0;
  double r_max = 0;
  int npoints = 0;

  /// Step in the mapped coordinate (r or log r).
  double h() const;
  double node(int i) const;
  std::vector<double> nodes() const;
  /// Same extent, different resolution.
  Grid with_points(int n) const;
};

/// Throws InvalidGrid unless 0 < r_min < r_max and npoints >= 100.
Grid make_grid(GridKind kind, double r_min, double r_max, int npoints);

/// Log grid on [1e-9 L, 40 L].
Grid default_grid(double length_scale, int npoints = 4000);

}  // namespace lrl
