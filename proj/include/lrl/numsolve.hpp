#pragma once

// Finite-difference eigenvalue oracle for the radial problems.
//
// On a log grid the substitution chi = r^{1/2} y, u = log r turns -chi'' + M chi = eps chi into
// the symmetric pencil  -y_uu + (1/4 + r^2 M) y = eps r^2 y; on a uniform grid the pencil mass is 1.

#include "lrl/check_report.hpp"
#include "lrl/grid.hpp"
#include "lrl/radial.hpp"

#include <Eigen/Core>

#include <functional>
#include <stdexcept>
#include <vector>

namespace lrl {

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Block-tridiagonal pencil (A, B): A has blocks diag[i], off[i] = A(i, i+1); B is diagonal
/// (mass[i] times the identity block). Dirichlet at both ends unless a channel is flagged Neumann
/// at r_min.
struct BandedSymmetricSystem {
  int nchan = 1;
  Grid grid;
  std::vector<double> r;  // nodes carrying unknowns
  std::vector<Eigen::MatrixXd> diag;
  std::vector<Eigen::MatrixXd> off;
  std::vector<double> mass;
  std::vector<double> channel_scale;
  std::vector<bool> neumann;

  int blocks() const { return static_cast<int>(diag.size()); }
  int size() const { return blocks() * nchan; }
  int bandwidth() const { return 2 * nchan - 1; }
  /// max |A - A^T| entry.
  double symmetry_defect() const;
  /// Number of pencil eigenvalues below x (Sylvester inertia of A - x B).
  int count_below(double x) const;
};

/// Generic discretization of -chi'' + M(r) chi with M symmetric nchan x nchan.
BandedSymmetricSystem discretize(const std::function<Eigen::MatrixXd(double)>& M, int nchan, const Grid& g,
                                 const std::vector<bool>& neumann = {});
/// Discretizes the reduced problem; a channel whose regular solution tends to a nonzero constant
/// in y (C diagonal with C_ii = -1/4) gets a Neumann condition at r_min.
BandedSymmetricSystem discretize(const RadialProblem& p, const Grid& g);

/// k smallest pencil eigenvalues, ascending (bisection on inertia counts, deterministic).
std::vector<double> lowest_eigenvalues(const BandedSymmetricSystem& s, int k);

/// Eigenvectors by inverse iteration, returned as chi on the grid (unsymmetrized channels),
/// normalized to sum_c int chi_c^2 dr = 1 with the largest-magnitude entry positive.
std::vector<RadialFunctionSample> eigenvectors(const BandedSymmetricSystem& s, const std::vector<double>& eigenvalues);

/// Eigenvectors on g and on the grid with halved step, combined in h^2 at the nodes of g.
std::vector<RadialFunctionSample> refined_eigenvectors(const RadialProblem& p, const Grid& g, int k);

struct RefinedLevel {
  double eps = 0;         // extrapolated eigenvalue of the reduced operator (2mE)
  double energy = 0;      // eps / 2m
  double error = 0;       // |extrapolated - fine|
  double eps_coarse = 0;
  double eps_fine = 0;
};

struct RefinedSpectrum {
  std::vector<RefinedLevel> levels;
  /// Observed order from npoints, 2 npoints, 4 npoints (only when requested; NaN otherwise).
  std::vector<double> order;
};

/// Richardson extrapolation in h^2 from grids with npoints and 2 npoints nodes.
RefinedSpectrum refined_spectrum(const RadialProblem& p, const Grid& g, int k, bool estimate_order = false);

/// Levels matched in order; relative deviation |E_num - E| / |E|.
CheckReport compare(const std::vector<SpectrumLine>& analytic, const std::vector<double>& numeric_energies,
                    double rel_tol);

}  // namespace lrl
