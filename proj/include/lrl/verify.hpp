#pragma once

// Exact verification of operator identities on random test functions.

#include "lrl/check_report.hpp"
#include "lrl/model.hpp"

namespace lrl {

struct VerifyOptions {
  int npoints = 20;      // random rational points per zero test
  int nfunctions = 2;    // random test functions per identity
  int max_degree = 2;
  std::uint64_t seed = 1;
};

/// [V, J_mu_nu] = 0, x_nu grad_nu V + V = 0 and S_mu_nu grad_nu V + grad_nu V S_mu_nu = 0.
CheckReport verify_potential_conditions(const ModelSpec& ms, const VerifyOptions& opt = {});
/// Same conditions for a caller-supplied potential in place of the model's.
CheckReport verify_potential_conditions(const ModelSpec& ms, const DiffOperator& V, const VerifyOptions& opt = {});

/// [J,H] = [K,H] = 0, [K_mu, J_nu_la] = i(d_mu_la K_nu - d_mu_nu K_la),
/// [K_mu, K_nu] = -(2i/m) J_mu_nu H, the so(d) relations for J, and
/// m^2 K_nu K_nu = 2m (C + (d-1)^2/4) H + Q with C = J_mu_nu J_mu_nu / 2 and
/// Q = -S S p^2/2 + S_la_mu S_la_nu p_mu p_nu - (m/2)(S J V + V S J) + m^2 r^2 V^2.
CheckReport verify_symmetry_algebra(const ModelSpec& ms, const VerifyOptions& opt = {});

/// Spinor model: {D, gamma.p} = {D, gamma.x} = 0, D^2 = J_mu_nu J_mu_nu / 2 + (d-1)(d-2)/8 and
/// p^2 = -d_r^2 - ((d-1)/r) d_r - (d-1)(d-3)/(4r^2) + D(D-1)/r^2.
/// Scalar model: p^2 = -d_r^2 - ((d-1)/r) d_r + L_mu_nu L_mu_nu / (2 r^2).
CheckReport verify_appendixA(const ModelSpec& ms, const VerifyOptions& opt = {});

/// Vector model, sums over mu < nu:
///   (SL) V + V (SL) = (alpha/r)((d-2) SL + 1 + d(d-3)/2) - d V,
///   S_mu_nu S_mu_nu = d - 1,
///   S_la_mu S_la_nu p_mu p_nu = p^2 + (d-2) P,  P_mu_nu = p_mu p_nu,
/// and the reduction
///   Q + 2m(d-2) H - m^2 alpha^2 (d-3)^2/4 = (d-2)[P - (m alpha/r)(Lhat + 1 - n n^T) + m^2 alpha^2 n n^T]
/// with Lhat the matrix operator (SL) restricted to mu < nu.
CheckReport verify_spin1_identities(const ModelSpec& ms, const VerifyOptions& opt = {});

}  // namespace lrl
