#include "lrl/numsolve.hpp"
#include "lrl/radial.hpp"

#include <cstdio>
#include <string>

namespace lrl {

CheckReport forbidden_channel_check(int d, const Rational& m, const Rational& alpha, int lmax,
                                    std::optional<Grid> grid) {
  if (d < 3) throw UnsupportedChannel("transverse vector channel needs d >= 3");
  if (lmax < 0) throw InvalidQuantumNumbers("lmax must be >= 0");
  CheckReport rep;
  if (d == 3) {
    rep.notes.push_back("skipped: for d = 3 the transverse channel is the free Laplacian");
    return rep;
  }
  for (int l = 0; l <= lmax; ++l) {
    const RadialProblem p = phi3_channel(d, l, m, alpha);
    const Grid g = grid ? *grid : default_grid(length_scale(p, 3));
    const double eps = lowest_eigenvalues(discretize(p, g), 1).front();
    char buf[96];
    std::snprintf(buf, sizeof buf, "l=%d lowest eigenvalue %.6e", l, eps);
    rep.notes.push_back(buf);
    rep.count("no_bound_state");
    if (eps < -1e-8) rep.fail({"no_bound_state", {l}, buf, {}});
  }
  // lt(lt+d-3) = j(j+d-2) has no solution: the two sides bracket each other at j = lt-1 and j = lt
  const int window = 64;
  for (int lt = 1; lt <= window; ++lt)
    for (int j = 0; j <= window; ++j) {
      rep.count("casimir_mismatch");
      if (lt * (lt + d - 3) == j * (j + d - 2)) rep.fail({"casimir_mismatch", {lt, j}, "equal", {}});
    }
  return rep;
}

}  // namespace lrl
