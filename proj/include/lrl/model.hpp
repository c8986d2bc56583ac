#pragma once

// Hamiltonians with matrix potentials and their symmetry generators.

#include "lrl/cliffalg.hpp"
#include "lrl/diffop.hpp"

namespace lrl {

enum class PotentialKind { coulomb, spinor, vector, vector_extended };

std::string to_string(PotentialKind k);
PotentialKind parse_potential_kind(std::string_view s);

struct IncompatibleKind : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModelSpec {
  int d = 3;
  SpinRep rep;
  PotentialKind potential = PotentialKind::coulomb;
  Rational mass = 1;
  Rational alpha = 1;

  int ncomp() const { return rep.dim(); }
};

/// Builds the representation matching the potential kind (d >= 2, m > 0, alpha > 0).
ModelSpec make_model(int d, PotentialKind kind, const Rational& mass, const Rational& alpha);

/// Throws IncompatibleKind when rep and potential do not match.
void validate(const ModelSpec& ms);

DiffOperator build_potential(const ModelSpec& ms);
DiffOperator build_laplacian_momentum(const ModelSpec& ms);  // p^2 = -sum d_nu^2
DiffOperator build_hamiltonian(const ModelSpec& ms);

/// Position of (mu, nu), mu < nu, in the row-major pair list.
int pair_index(int d, int mu, int nu);

/// J_mu_nu = x_mu p_nu - x_nu p_mu + S_mu_nu for mu < nu, in pair_index order.
std::vector<DiffOperator> build_angular_momenta(const ModelSpec& ms);

/// Orbital part L_mu_nu = x_mu p_nu - x_nu p_mu only.
std::vector<DiffOperator> build_orbital_momenta(const ModelSpec& ms);

/// J_mu_nu for any ordered pair, from the mu < nu list.
DiffOperator pair_entry(const std::vector<DiffOperator>& list, int d, int mu, int nu);

/// K_mu = (1/2m)(p_nu J_mu_nu + J_mu_nu p_nu) + x_mu V.
std::vector<DiffOperator> build_lrl(const ModelSpec& ms);

/// D = S_mu_nu L_mu_nu + (d-1)/2 = (1/2) gamma_mu gamma_nu (x_nu d_mu - x_mu d_nu) + (d-1)/2,
/// summed over all ordered pairs. Hermitian; equals (d-1)/2 on radial functions.
DiffOperator build_dirac_D(const ModelSpec& ms);

/// Multiplication operators grad_nu V for an arbitrary multiplication operator V.
std::vector<DiffOperator> gradient(const DiffOperator& V);

/// Multiplication operators grad_nu V.
std::vector<DiffOperator> gradient_potential(const ModelSpec& ms);

}  // namespace lrl
