#pragma once

// Radial channels of the Coulomb-type models: reduced operators, closed-form spectra,
// SUSY ladders, closed-form eigenfunctions and the Casimir/energy relations.

#include "lrl/check_report.hpp"
#include "lrl/grid.hpp"
#include "lrl/radial_ops.hpp"
#include "lrl/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrl {

struct InvalidQuantumNumbers : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Channel that the radial reduction does not cover (vector l = 0, vector d < 3, mu = -1 ladder).
struct UnsupportedChannel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ChannelKind { scalar, spinor, vector_coupled, vector_transverse };

const char* to_string(ChannelKind k);

struct QuantumLabels {
  int l = 0;        // scalar / vector
  Rational j = 0;   // spinor
  Rational mu = 0;  // l + (d-3)/2
  Rational rho = 0; // j + (d-2)/2
};

/// Reduced radial problem  -chi'' + (C/r^2 + G/r) chi = eps chi,  eps = 2mE.
/// For the coupled vector pair chi = r^{(d-1)/2} (phi1, phi2); C is then not symmetric and
/// channel_scale = (1, sqrt(L)) is the diagonal similarity that symmetrizes it.
struct RadialProblem {
  int d = 3;
  ChannelKind kind = ChannelKind::scalar;
  int nchan = 1;
  Rational m = 1;
  Rational alpha = 1;
  QuantumLabels quantum;
  RatMatrix C{1};
  RatMatrix G{1};
  std::vector<double> channel_scale{1.0};

  /// Symmetrized M(r) = C/r^2 + G/r.
  Eigen::MatrixXd potential_matrix(double r) const;
  /// Exact -d^2/dr^2 + C r^-2 + G r^-1 (unsymmetrized).
  RadialOperator hamiltonian() const;
};

struct SpectrumLine {
  ChannelKind kind = ChannelKind::scalar;
  int d = 3;
  int n = 0;
  int l = 0;
  Rational j = 0;
  Rational principal;  // N, or k for the vector channel
  Rational energy;
};

enum class LadderDirection { lowering, raising };

/// a = -d/dr + W (lowering), a+ = d/dr + W (raising), W = W1/r + W0, H = a+ a + c.
struct LadderOp {
  ChannelKind kind = ChannelKind::scalar;
  Rational param;  // mu, or rho for the spinor
  RatMatrix w_inv_r{1};
  RatMatrix w_const{1};
  Rational c;
  LadderDirection direction = LadderDirection::raising;

  RadialOperator lowering() const;
  RadialOperator raising() const;
  RadialOperator op() const { return direction == LadderDirection::raising ? raising() : lowering(); }
  /// a+ a + c.
  RadialOperator factorized() const;
  /// a a+ + c, the partner (parameter + 1) operator.
  RadialOperator partner() const;
};

/// Sampled radial function; values[c][i] is channel c at r[i].
struct RadialFunctionSample {
  std::vector<double> r;
  std::vector<std::vector<double>> values;
  double normalization = 1;  // factor applied to the unnormalized closed form
  int nodes = 0;
};

// -- scalar --------------------------------------------------------------------------------

RadialProblem scalar_channel(int d, int l, const Rational& m, const Rational& alpha);
/// Scalar channel labelled directly by mu (mu > -1).
RadialProblem scalar_channel_mu(const Rational& mu, const Rational& m, const Rational& alpha);
SpectrumLine analytic_energy_scalar(int d, int l, int n, const Rational& m, const Rational& alpha);

LadderOp susy_ladder(const Rational& mu, const Rational& m, const Rational& alpha);
/// a+_mu ... a+_{mu+n-1} psi0_{mu+n}, exact and unnormalized; eigenvalue eps = c_{mu+n}.
RadialExpansion scalar_ladder_state(const Rational& mu, int n, const Rational& m, const Rational& alpha);
/// z^{mu+1} e^{-z} 1F1(-n, 2mu+2, 2z), z = m alpha r / (n+mu+1), exact.
RadialExpansion scalar_closed_form(const Rational& mu, int n, const Rational& m, const Rational& alpha);
/// Kummer-based closed form sampled on the grid and normalized.
RadialFunctionSample scalar_eigenfunction(int d, int l, int n, const Rational& m, const Rational& alpha,
                                          const Grid& grid);

// -- spinor --------------------------------------------------------------------------------

RadialProblem spinor_channel(int d, const Rational& j, const Rational& m, const Rational& alpha);
SpectrumLine analytic_energy_spinor(int d, const Rational& j, int n, const Rational& m, const Rational& alpha);
LadderOp spinor_ladder(const Rational& rho, const Rational& m, const Rational& alpha);
/// y^{rho+1} (K0(y), -K1(y)), y = 2 m alpha r / (2rho+1).
RadialExpansion spinor_ground_expansion(const Rational& rho, const Rational& m, const Rational& alpha);
RadialExpansion spinor_ladder_state(const Rational& rho, int n, const Rational& m, const Rational& alpha);
RadialFunctionSample spinor_ground_state(int d, const Rational& j, const Rational& m, const Rational& alpha,
                                         const Grid& grid);
RadialFunctionSample spinor_excited_states(int d, const Rational& j, int n, const Rational& m,
                                           const Rational& alpha, const Grid& grid);
/// j^(j^+d-1) + (d-1)(d-2)/8 with j^ = j+n.
Rational casimir_relation_spinor(int d, const Rational& j, int n);

// -- spin 1 --------------------------------------------------------------------------------

/// Coupled (phi1, phi2) channel, attractive orientation. Requires d >= 3 and l >= 1.
RadialProblem vector_channel(int d, int l, const Rational& m, const Rational& alpha);
/// Native first-derivative form acting on (phi1, phi2):
/// -phi'' - (d-1)/r phi' + K/r^2 phi - m alpha diag(d-1, d-3)/r phi.
RadialOperator vector_native_operator(const RadialProblem& p);
/// Single equation for r^{(d+1)/2} phi2: the scalar channel with alpha -> (d-1)alpha/2.
RadialProblem vector_reduced_channel(const RadialProblem& p);
SpectrumLine analytic_energy_vector(int d, int l, int n, const Rational& m, const Rational& alpha);
/// (phi1, phi2) exact, unnormalized.
RadialExpansion vector_closed_form(int d, int l, int n, const Rational& m, const Rational& alpha);
/// (phi1, phi2) sampled from the Kummer closed form; joint norm  int r^{d-1}(phi1^2 + L phi2^2) dr = 1.
RadialFunctionSample vector_eigenfunctions(int d, int l, int n, const Rational& m, const Rational& alpha,
                                           const Grid& grid);

/// eps of the constrained system for energy E and so(d+1) Casimir value omega.
Rational vector_epsilon(int d, const Rational& energy, const Rational& omega, const Rational& m,
                        const Rational& alpha);
/// omega = l'(l'+d-1).
Rational vector_casimir_omega(int d, int lprime);

struct VectorConstraintResidual {
  double ac1 = 0;   // max relative residual of the first constraint
  double ac2 = 0;   // second constraint
  double ode = 0;   // coupled second-order system at the energy used
  Rational energy;
  Rational epsilon;
  Rational cc;      // 2mE + eps + m^2 alpha^2, exact
  bool cc_exact() const { return sgn(cc) == 0; }
};

/// The two first-order constraints as rows of a 2x2 operator on (phi1, phi2).
RadialOperator vector_constraint_operator(const RadialProblem& p, const Rational& energy, const Rational& epsilon);

/// Constraint residuals of the closed-form pair; energy defaults to the analytic level.
VectorConstraintResidual vector_constraint_residual(int d, int l, int n, const Rational& m, const Rational& alpha,
                                                    const Grid& grid,
                                                    const std::optional<Rational>& energy = std::nullopt);

enum class CasimirMap { E1, E2 };
/// E from omega.
Rational casimir_energy(CasimirMap which, int d, const Rational& omega, const Rational& m, const Rational& alpha);
/// Transverse levels -m alpha^2 (d-3)^2 / (2(2l+2n+d-1)^2).
Rational casimir_energy_e3(int d, int l, int n, const Rational& m, const Rational& alpha);
/// omega = lt(lt + d - 3), lt = l+n+1.
Rational transverse_casimir_omega(int d, int l, int n);

/// Transverse channel p^2 + alpha~/r with alpha~ = m(d-3)alpha per partial wave l.
RadialProblem phi3_channel(int d, int l, const Rational& m, const Rational& alpha);
/// Requires d >= 4 for the numeric part; d = 3 returns a skipped report with a note.
CheckReport forbidden_channel_check(int d, const Rational& m, const Rational& alpha, int lmax,
                                    std::optional<Grid> grid = std::nullopt);

// -- utilities -----------------------------------------------------------------------------

/// Characteristic decay length N_max / (m alpha) for the lowest `levels` states of a channel.
double length_scale(const RadialProblem& p, int levels);

/// Per channel, max over grid points of |((op - eps) f)_c| divided by the sum of the magnitudes of
/// the individual terms, evaluated in floating point from the exact derivatives of f.
std::vector<double> operator_residual(const RadialOperator& op, const RadialExpansion& f, double eps,
                                      const Grid& grid);
/// Largest channel value of operator_residual for the reduced operator.
double ode_residual(const RadialProblem& p, const RadialExpansion& f, double eps, const Grid& grid);

/// Samples f on the grid, normalized so that sum_c w_c int r^weight_rpow |f_c|^2 dr = 1 over (0, inf).
RadialFunctionSample sample_expansion(const RadialExpansion& f, const Grid& grid,
                                      const std::vector<double>& channel_weight = {}, int weight_rpow = 0);

/// Strict sign changes of the channel with the largest magnitude; |v| < 1e-12 max is ignored.
int node_count(const std::vector<double>& v);
int node_count(const RadialFunctionSample& s);

/// Cartesian point; angles theta_1..theta_{d-1}:
/// x_d = r cos t_{d-1}, ..., x_2 = r sin t_{d-1}..sin t_2 cos t_1, x_1 = r sin t_{d-1}..sin t_1.
std::vector<double> hyperspherical_to_cartesian(double r, const std::vector<double>& angles);

}  // namespace lrl
