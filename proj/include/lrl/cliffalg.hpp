#pragma once

// Clifford algebra generators and so(d) spin representations with exact entries.

#include "lrl/check_report.hpp"
#include "lrl/rational.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace lrl {

struct InvalidDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedParity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Kronecker product A (x) B.
template <typename Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Pauli matrices sigma_1, sigma_2, sigma_3 (k = 1, 2, 3).
template <typename Scalar>
DenseMatrix<Scalar> pauli(int k) {
  DenseMatrix<Scalar> s = DenseMatrix<Scalar>::Zero(2, 2);
  switch (k) {
    case 1: s(0, 1) = Scalar(1); s(1, 0) = Scalar(1); break;
    case 2: s(0, 1) = Scalar(0, -1); s(1, 0) = Scalar(0, 1); break;
    case 3: s(0, 0) = Scalar(1); s(1, 1) = Scalar(-1); break;
    default: throw std::invalid_argument("pauli index must be 1, 2 or 3");
  }
  return s;
}

/// Hermitian generators gamma_1..gamma_d of the Clifford algebra
/// {gamma_mu, gamma_nu} = 2 delta_mu_nu, of size 2^floor(d/2).
///
/// Built by the recursion d -> d+2: gamma_mu -> gamma_mu (x) sigma_3 and two new
/// generators 1 (x) sigma_1, 1 (x) sigma_2. Even d starts from the empty set
/// (size 1), odd d from gamma_1 = (1).
template <typename Scalar>
std::vector<DenseMatrix<Scalar>> gamma_matrices(int d) {
  if (d < 1) throw InvalidDimension("gamma matrices need d >= 1");
  std::vector<DenseMatrix<Scalar>> g;
  int dim = 1;
  if (d % 2 == 1) g.push_back(DenseMatrix<Scalar>::Identity(1, 1));
  for (int have = d % 2; have < d; have += 2) {
    for (auto& m : g) m = kron<Scalar>(m, pauli<Scalar>(3));
    const DenseMatrix<Scalar> id = DenseMatrix<Scalar>::Identity(dim, dim);
    g.push_back(kron<Scalar>(id, pauli<Scalar>(1)));
    g.push_back(kron<Scalar>(id, pauli<Scalar>(2)));
    dim *= 2;
  }
  return g;
}

struct GammaSet {
  int d = 0;
  int dim = 0;
  std::vector<ExactMatrix> matrices;  // gamma_1..gamma_d at indices 0..d-1

  const ExactMatrix& operator[](int mu) const { return matrices.at(static_cast<std::size_t>(mu)); }
};

enum class SpinKind { scalar, spinor, vector, vector_extended };

const char* to_string(SpinKind k);

/// Antisymmetric family S_mu_nu of so(d) generators; only mu < nu is stored.
class SpinRep {
 public:
  SpinRep(int d, SpinKind kind, int dim);

  int d() const { return d_; }
  int dim() const { return dim_; }
  SpinKind kind() const { return kind_; }

  /// S_mu_nu for any ordered pair (0-based); S_mu_mu is zero, S_nu_mu = -S_mu_nu.
  ExactMatrix S(int mu, int nu) const;
  void set(int mu, int nu, ExactMatrix m);

  /// Gelfand-Tsetlin style label kept as metadata only.
  std::string label() const;

 private:
  std::size_t slot(int mu, int nu) const;

  int d_;
  SpinKind kind_;
  int dim_;
  std::vector<ExactMatrix> upper_;  // (mu, nu), mu < nu, row-major pair order
};

GammaSet build_gamma(int d);

/// gamma_{d+1} = phase * gamma_1 ... gamma_d, phase in {1, i} chosen so that the
/// result is Hermitian with unit square. Requires even d.
ExactMatrix build_chirality(const GammaSet& g);

SpinRep build_scalar_rep(int d);
/// S_mu_nu = -i (gamma_mu gamma_nu - gamma_nu gamma_mu) / 4 (Hermitian).
SpinRep build_spin_half(int d);
/// (S_mu_nu)_ab = -i (delta_mu_a delta_nu_b - delta_nu_a delta_mu_b), the sign for which
/// x_mu p_nu - x_nu p_mu + S_mu_nu annihilates the field V_a(x) = x_a.
SpinRep build_spin_one(int d);
/// so(d) generators of the (d+1)-dimensional vector representation of so(d+1),
/// with the extra (rotation-invariant) component placed first.
SpinRep build_spin_one_extended(int d);

CheckReport check_clifford(const GammaSet& g);
CheckReport check_so_commutations(const SpinRep& s);

/// 1/2 S_mu_nu S_mu_nu summed over all ordered pairs.
ExactMatrix casimir(const SpinRep& s);

}  // namespace lrl
