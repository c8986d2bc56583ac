#include "doctest.h"

#include "lrl/cliffalg.hpp"

#include <Eigen/Eigenvalues>

#include <complex>

using namespace lrl;
using cd = std::complex<double>;

TEST_CASE("gamma matrices: d=2 gives two anticommuting Hermitian 2x2 involutions") {
  const GammaSet g = build_gamma(2);
  CHECK(g.dim == 2);
  REQUIRE(g.matrices.size() == 2);
  const ExactMatrix id = ExactMatrix::Identity(2, 2);
  CHECK(multiply(g[0], g[0]) == id);
  CHECK(multiply(g[1], g[1]) == id);
  CHECK(is_exact_zero(multiply(g[0], g[1]) + multiply(g[1], g[0])));
  CHECK(check_clifford(g).passed);
}

TEST_CASE("gamma matrices: dimension is 2^floor(d/2)") {
  CHECK(build_gamma(5).dim == 4);
  for (int d = 1; d <= 10; ++d) CHECK(build_gamma(d).dim == (1 << (d / 2)));
}

TEST_CASE("gamma matrices: d=8 brute force in floating point agrees with exact check") {
  // independent route: complex<double> instantiation, Eigen's own products
  const auto g = gamma_matrices<cd>(8);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  int zero_anticommutators = 0;
  for (int mu = 0; mu < 8; ++mu) {
    CHECK((g[mu] * g[mu] - id).norm() == 0.0);
    CHECK((g[mu] - g[mu].adjoint()).norm() == 0.0);
    for (int nu = mu + 1; nu < 8; ++nu)
      if ((g[mu] * g[nu] + g[nu] * g[mu]).norm() == 0.0) ++zero_anticommutators;
  }
  CHECK(zero_anticommutators == 28);
  CHECK(check_clifford(build_gamma(8)).passed);
}

TEST_CASE("check_clifford: d=6 passes, d=1 passes, scaled generator fails at (1,1)") {
  CHECK(check_clifford(build_gamma(6)).passed);
  const GammaSet g1 = build_gamma(1);
  CHECK(g1.dim == 1);
  CHECK(check_clifford(g1).passed);

  GammaSet bad = build_gamma(3);
  bad.matrices[0] = GaussRational(2) * bad.matrices[0];
  const CheckReport rep = check_clifford(bad);
  CHECK_FALSE(rep.passed);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.identity == "anticommutator" && v.indices == std::vector<int>{1, 1}) found = true;
  CHECK(found);
}

TEST_CASE("gamma construction is deterministic") {
  const GammaSet a = build_gamma(7), b = build_gamma(7);
  for (int mu = 0; mu < 7; ++mu) CHECK(a[mu] == b[mu]);
}

TEST_CASE("invalid dimensions are rejected") {
  CHECK_THROWS_AS(build_gamma(0), InvalidDimension);
  CHECK_THROWS_AS(build_spin_half(1), InvalidDimension);
  CHECK_THROWS_AS(build_spin_one(1), InvalidDimension);
}

TEST_CASE("chirality matrix") {
  for (int d : {2, 4, 6, 8}) {
    CAPTURE(d);
    const GammaSet g = build_gamma(d);
    const ExactMatrix c = build_chirality(g);
    CHECK(multiply(c, c) == ExactMatrix::Identity(g.dim, g.dim));
    CHECK(c == adjoint(c));
    for (int mu = 0; mu < d; ++mu) CHECK(is_exact_zero(multiply(c, g[mu]) + multiply(g[mu], c)));
  }
  CHECK_THROWS_AS(build_chirality(build_gamma(3)), UnsupportedParity);
}

TEST_CASE("spin-1/2: d=3 generators have eigenvalues +-1/2") {
  const SpinRep s = build_spin_half(3);
  CHECK(s.dim() == 2);
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
    const ExactMatrix m = s.S(a, b);
    Eigen::Matrix2cd md;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) md(i, j) = cd(m(i, j).re.get_d(), m(i, j).im.get_d());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(md);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.5));
    // exact: S^2 = 1/4
    CHECK(multiply(m, m) == GaussRational(Rational(1, 4)) * ExactMatrix::Identity(2, 2));
  }
}

TEST_CASE("spin-1/2: d=2 has a single generator, all so(d) relations hold") {
  const SpinRep s2 = build_spin_half(2);
  CHECK(s2.dim() == 2);
  CHECK(check_so_commutations(s2).checked.at("hermitian") == 1);
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    CHECK(check_so_commutations(build_spin_half(d)).passed);
  }
}

TEST_CASE("spin-1: entries, Casimir and commutation relations") {
  const SpinRep s = build_spin_one(3);
  const ExactMatrix s12 = s.S(0, 1);
  CHECK(s12(0, 1) == -GaussRational::i());
  CHECK(s12(1, 0) == GaussRational::i());
  CHECK(s12(2, 2).is_zero());
  CHECK(s12(0, 0).is_zero());
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    const SpinRep v = build_spin_one(d);
    CHECK(casimir(v) == GaussRational(d - 1) * ExactMatrix::Identity(d, d));
    CHECK(v.dim() == d);
  }
  CHECK(check_so_commutations(build_spin_one(4)).passed);
  CHECK(check_so_commutations(build_spin_one(5)).passed);
  CHECK(check_so_commutations(build_spin_one_extended(4)).passed);
}

TEST_CASE("check_so_commutations detects a zeroed generator") {
  SpinRep s = build_spin_one(3);
  s.set(0, 1, ExactMatrix::Zero(3, 3));
  const CheckReport rep = check_so_commutations(s);
  CHECK_FALSE(rep.passed);
  CHECK(!rep.violations.empty());
}

TEST_CASE("scalar representation is trivial") {
  const SpinRep s = build_scalar_rep(4);
  CHECK(s.dim() == 1);
  CHECK(is_exact_zero(s.S(0, 3)));
  CHECK(check_so_commutations(s).passed);
}
