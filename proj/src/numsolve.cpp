#include "lrl/numsolve.hpp"

#include "lrl/specfun.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace lrl {

namespace {

/// Negative eigenvalue count of a symmetric block.
int negatives(const Eigen::MatrixXd& D) {
  if (D.rows() == 1) return D(0, 0) < 0 ? 1 : 0;
  if (D.rows() == 2) {
    const double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
    if (det < 0) return 1;
    return D(0, 0) + D(1, 1) < 0 ? 2 : 0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D, Eigen::EigenvaluesOnly);
  return static_cast<int>((es.eigenvalues().array() < 0).count());
}

void normalize(RadialFunctionSample& f, const std::vector<double>& channel_scale) {
  std::vector<double> dens(f.r.size(), 0.0);
  double big = 0;
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    const double w = channel_scale[c];
    for (std::size_t i = 0; i < f.r.size(); ++i) {
      const double v = f.values[c][i];
      dens[i] += w * w * v * v;
      if (std::abs(v) > std::abs(big)) big = v;
    }
  }
  const double norm = std::sqrt(integrate_samples(f.r, dens));
  const double scale = (big < 0 ? -1.0 : 1.0) / norm;
  for (auto& ch : f.values)
    for (auto& v : ch) v *= scale;
  f.normalization = scale;
  f.nodes = node_count(f);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double BandedSymmetricSystem::symmetry_defect() const {
  double worst = 0;
  for (const auto& D : diag) worst = std::max(worst, (D - D.transpose()).cwiseAbs().maxCoeff());
  for (const auto& O : off) worst = std::max(worst, (O - O.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

int BandedSymmetricSystem::count_below(double x) const {
  // block LDL^T of A - x B; off-diagonal blocks are symmetric
  int count = 0;
  Eigen::MatrixXd D = diag[0] - x * mass[0] * Eigen::MatrixXd::Identity(nchan, nchan);
  count += negatives(D);
  for (int i = 1; i < blocks(); ++i) {
    const Eigen::MatrixXd& O = off[static_cast<std::size_t>(i - 1)];
    Eigen::MatrixXd Dinv;
    if (nchan == 1) {
      Dinv = Eigen::MatrixXd::Constant(1, 1, 1 / (D(0, 0) == 0 ? 1e-300 : D(0, 0)));
    } else if (nchan == 2) {
      double det = D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0);
      if (det == 0) det = 1e-300;
      Dinv.resize(2, 2);
      Dinv << D(1, 1) / det, -D(0, 1) / det, -D(1, 0) / det, D(0, 0) / det;
    } else {
      Dinv = D.inverse();
    }
    D = diag[static_cast<std::size_t>(i)] - x * mass[static_cast<std::size_t>(i)] * Eigen::MatrixXd::Identity(nchan, nchan) -
        O.transpose() * Dinv * O;
    count += negatives(D);
  }
  return count;
}

BandedSymmetricSystem discretize(const std::function<Eigen::MatrixXd(double)>& M, int nchan, const Grid& g,
                                 const std::vector<bool>& neumann) {
  if (nchan < 1) throw std::invalid_argument("need at least one channel");
  make_grid(g.kind, g.r_min, g.r_max, g.npoints);  // validates
  BandedSymmetricSystem s;
  s.nchan = nchan;
  s.grid = g;
  s.neumann = neumann.empty() ? std::vector<bool>(static_cast<std::size_t>(nchan), false) : neumann;
  if (static_cast<int>(s.neumann.size()) != nchan) throw std::invalid_argument("one boundary flag per channel");
  s.channel_scale.assign(static_cast<std::size_t>(nchan), 1.0);
  const double h = g.h();
  const double ih2 = 1 / (h * h);
  const bool log = g.kind == GridKind::log;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(nchan, nchan);
  for (int i = 1; i < g.npoints - 1; ++i) {
    const double r = g.node(i);
    Eigen::MatrixXd A = M(r);
    if (A.rows() != nchan || A.cols() != nchan) throw std::invalid_argument("potential matrix has the wrong size");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + A.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("potential matrix is not symmetric");
    A = 0.5 * (A + A.transpose());
    if (log) A = r * r * A + 0.25 * I;
    A += 2 * ih2 * I;
    s.r.push_back(r);
    s.diag.push_back(A);
    s.mass.push_back(log ? r * r : 1.0);
  }
  for (int c = 0; c < nchan; ++c)
    if (s.neumann[static_cast<std::size_t>(c)]) s.diag.front()(c, c) -= ih2;
  s.off.assign(s.diag.size() - 1, -ih2 * I);
  return s;
}

BandedSymmetricSystem discretize(const RadialProblem& p, const Grid& g) {
  std::vector<bool> neumann(static_cast<std::size_t>(p.nchan), false);
  for (int c = 0; c < p.nchan; ++c) {
    bool diagonal_row = true;
    for (int k = 0; k < p.nchan; ++k)
      if (k != c && (sgn(p.C(c, k)) != 0 || sgn(p.C(k, c)) != 0)) diagonal_row = false;
    neumann[static_cast<std::size_t>(c)] = g.kind == GridKind::log && diagonal_row && p.C(c, c) == Rational(-1, 4);
  }
  BandedSymmetricSystem s = discretize([&](double r) { return p.potential_matrix(r); }, p.nchan, g, neumann);
  s.channel_scale = p.channel_scale;
  return s;
}

std::vector<double> lowest_eigenvalues(const BandedSymmetricSystem& s, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > s.size()) throw std::invalid_argument("k exceeds the matrix size");
  double lo = -1;
  int guard = 0;
  while (s.count_below(lo) > 0) {
    lo *= 2;
    if (++guard > 1100) throw ConvergenceFailure("no lower bound for the spectrum");
  }
  double hi = 1;
  guard = 0;
  while (s.count_below(hi) < k) {
    hi = 2 * hi + 1;
    if (++guard > 1100) throw ConvergenceFailure("no upper bound for the requested levels");
  }
  std::vector<double> out;
  for (int i = 0; i < k; ++i) {
    // count(a) <= i < count(b)
    double a = lo, b = hi;
    if (!out.empty()) a = out.back() - 1e-300;
    int it = 0;
    while (b - a > 4e-16 * std::max(std::abs(a), std::abs(b)) && b - a > 1e-300) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (s.count_below(mid) <= i)
        a = mid;
      else
        b = mid;
      if (++it > 400)
        throw ConvergenceFailure("bisection did not converge for level " + std::to_string(i) + " (interval " +
                                 fmt(a) + ", " + fmt(b) + ")");
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

std::vector<RadialFunctionSample> eigenvectors(const BandedSymmetricSystem& s, const std::vector<double>& eigenvalues) {
  const int n = s.size();
  const int nc = s.nchan;
  std::vector<RadialFunctionSample> out;
  for (const double eps : eigenvalues) {
    const double sigma = eps + 1e-11 * std::max(std::abs(eps), 1e-6);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(3 * nc));
    for (int b = 0; b < s.blocks(); ++b) {
      for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) {
          double v = s.diag[static_cast<std::size_t>(b)](i, j);
          if (i == j) v -= sigma * s.mass[static_cast<std::size_t>(b)];
          if (v != 0) t.emplace_back(b * nc + i, b * nc + j, v);
        }
      if (b + 1 < s.blocks())
        for (int i = 0; i < nc; ++i)
          for (int j = 0; j < nc; ++j) {
            const double v = s.off[static_cast<std::size_t>(b)](i, j);
            if (v == 0) continue;
            t.emplace_back(b * nc + i, (b + 1) * nc + j, v);
            t.emplace_back((b + 1) * nc + j, b * nc + i, v);
          }
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(t.begin(), t.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw ConvergenceFailure("inverse iteration factorization failed");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    for (int it = 0; it < 4; ++it) {
      Eigen::VectorXd bx(n);
      for (int b = 0; b < s.blocks(); ++b)
        for (int i = 0; i < nc; ++i) bx(b * nc + i) = s.mass[static_cast<std::size_t>(b)] * x(b * nc + i);
      x = lu.solve(bx);
      x /= x.norm();
    }
    // back to chi on the full grid
    const std::vector<double> nodes = s.grid.nodes();
    const bool log = s.grid.kind == GridKind::log;
    RadialFunctionSample f;
    f.r = nodes;
    f.values.assign(static_cast<std::size_t>(nc), std::vector<double>(nodes.size(), 0.0));
    for (int c = 0; c < nc; ++c) {
      auto& v = f.values[static_cast<std::size_t>(c)];
      for (int b = 0; b < s.blocks(); ++b) v[static_cast<std::size_t>(b + 1)] = x(b * nc + c);
      if (s.neumann[static_cast<std::size_t>(c)]) v[0] = v[1];
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (log) v[i] *= std::sqrt(nodes[i]);
        v[i] /= s.channel_scale[static_cast<std::size_t>(c)];
      }
    }
    normalize(f, s.channel_scale);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<RadialFunctionSample> refined_eigenvectors(const RadialProblem& p, const Grid& g, int k) {
  const BandedSymmetricSystem s1 = discretize(p, g);
  const BandedSymmetricSystem s2 = discretize(p, g.with_points(2 * g.npoints - 1));
  const auto v1 = eigenvectors(s1, lowest_eigenvalues(s1, k));
  const auto v2 = eigenvectors(s2, lowest_eigenvalues(s2, k));
  std::vector<RadialFunctionSample> out;
  for (std::size_t n = 0; n < v1.size(); ++n) {
    RadialFunctionSample f = v1[n];
    // coarse node i is fine node 2i
    double dot = 0;
    for (std::size_t c = 0; c < f.values.size(); ++c)
      for (std::size_t i = 0; i < f.r.size(); ++i) dot += f.values[c][i] * v2[n].values[c][2 * i];
    const double sign = dot < 0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < f.values.size(); ++c)
      for (std::size_t i = 0; i < f.r.size(); ++i)
        f.values[c][i] = (4 * sign * v2[n].values[c][2 * i] - f.values[c][i]) / 3;
    normalize(f, s1.channel_scale);
    out.push_back(std::move(f));
  }
  return out;
}

RefinedSpectrum refined_spectrum(const RadialProblem& p, const Grid& g, int k, bool estimate_order) {
  const Grid g1 = g;
  const Grid g2 = g.with_points(2 * g.npoints - 1);
  const auto e1 = lowest_eigenvalues(discretize(p, g1), k);
  const auto e2 = lowest_eigenvalues(discretize(p, g2), k);
  std::vector<double> e3;
  if (estimate_order) e3 = lowest_eigenvalues(discretize(p, g.with_points(4 * g.npoints - 3)), k);
  const double h1 = g1.h(), h2 = g2.h();
  const double two_m = 2 * p.m.get_d();
  RefinedSpectrum out;
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    RefinedLevel lv;
    lv.eps_coarse = e1[ui];
    lv.eps_fine = e2[ui];
    lv.eps = (e2[ui] * h1 * h1 - e1[ui] * h2 * h2) / (h1 * h1 - h2 * h2);
    lv.energy = lv.eps / two_m;
    lv.error = std::abs(lv.eps - lv.eps_fine) / two_m;
    out.levels.push_back(lv);
    if (estimate_order) {
      const double a = std::abs(e1[ui] - e2[ui]), b = std::abs(e2[ui] - e3[ui]);
      out.order.push_back(std::log(a / b) / std::log(h1 / h2));
    } else {
      out.order.push_back(std::nan(""));
    }
  }
  return out;
}

CheckReport compare(const std::vector<SpectrumLine>& analytic, const std::vector<double>& numeric_energies,
                    double rel_tol) {
  if (analytic.size() != numeric_energies.size())
    throw std::invalid_argument("analytic and numeric level counts differ");
  CheckReport rep;
  double worst = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double e = analytic[i].energy.get_d();
    const double dev = std::abs(numeric_energies[i] - e) / std::abs(e);
    worst = std::max(worst, dev);
    rep.count("level_match");
    if (!(dev <= rel_tol)) rep.fail({"level_match", {static_cast<int>(i)}, fmt(dev), {}});
  }
  rep.notes.push_back("max relative deviation " + fmt(worst));
  return rep;
}

}  // namespace lrl
