#include "lrl/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace lrl;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational(frac(p, d)); }

WaveFunction single(int d, int ncomp, int comp, const Monomial& m, int rpow, const GaussRational& c,
                    const Rational& beta = Rational(1, 2)) {
  WaveFunction f(d, ncomp, beta);
  f.add(comp, m, rpow, c);
  return f;
}

Monomial mono(std::initializer_list<int> e) {
  Monomial m;
  int i = 0;
  for (int v : e) m[i++] = static_cast<std::uint8_t>(v);
  return m;
}

RationalPoint point(std::initializer_list<long> xs) {
  RationalPoint p;
  for (long v : xs) p.emplace_back(v);
  return p;
}

// Matrix value of a multiplication operator at x, from its action on constant unit vectors.
std::vector<std::vector<ParityPair>> matrix_at(const DiffOperator& V, const RationalPoint& x) {
  const int n = V.ncomp();
  std::vector<std::vector<ParityPair>> m(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    const auto col = evaluate(apply(V, single(V.d(), n, b, Monomial{}, 0, q(1))), x);
    for (int a = 0; a < n; ++a) m[static_cast<std::size_t>(a)].push_back(col[static_cast<std::size_t>(a)]);
  }
  return m;
}

}  // namespace

TEST_CASE("partial derivative of x1 exp(-beta r) follows the product rule") {
  const Rational beta(1, 3);
  const auto f = single(2, 1, 0, mono({1}), 0, q(1), beta);
  const auto g = apply(DiffOperator::partial(2, 1, 0), f);
  REQUIRE(g.component(0).size() == 2);
  CHECK(g.component(0)[0].mono == Monomial{});
  CHECK(g.component(0)[0].rpow == 0);
  CHECK(g.component(0)[0].coeff == q(1));
  CHECK(g.component(0)[1].mono == mono({2}));
  CHECK(g.component(0)[1].rpow == -1);
  CHECK(g.component(0)[1].coeff == GaussRational(Rational(-beta)));
}

TEST_CASE("r^-1 times r exp(-beta r) is exp(-beta r)") {
  const auto f = single(3, 1, 0, Monomial{}, 1, q(1));
  const auto g = apply(DiffOperator::scalar_function(3, 1, Monomial{}, -1, q(1)), f);
  REQUIRE(g.component(0).size() == 1);
  CHECK(g.component(0)[0].rpow == 0);
  CHECK(g.component(0)[0].mono == Monomial{});
  CHECK(g.beta() == f.beta());
}

TEST_CASE("p^2 exp(-beta r) = (-beta^2 + beta(d-1)/r) exp(-beta r)") {
  for (int d = 2; d <= 6; ++d) {
    const Rational beta(2, 5);
    const auto ms = make_model(d, PotentialKind::coulomb, Rational(1), Rational(1));
    const auto f = single(d, 1, 0, Monomial{}, 0, q(1), beta);
    WaveFunction expect(d, 1, beta);
    expect.add(0, Monomial{}, 0, GaussRational(Rational(-beta * beta)));
    expect.add(0, Monomial{}, -1, GaussRational(Rational(beta * (d - 1))));
    CHECK(is_zero_function(apply(build_laplacian_momentum(ms), f) - expect, 20, 3));
  }
}

TEST_CASE("apply rejects mismatched dimension or components") {
  const auto f = single(3, 2, 0, Monomial{}, 0, q(1));
  CHECK_THROWS_AS(apply(DiffOperator::identity(3, 1), f), DimensionMismatch);
  CHECK_THROWS_AS(apply(DiffOperator::identity(2, 2), f), DimensionMismatch);
}

TEST_CASE("parity-split evaluation") {
  const auto r = single(2, 1, 0, Monomial{}, 1, q(1));
  auto v = evaluate(r, point({3, 4}));
  CHECK(v[0].even == q(5));
  CHECK(v[0].odd == q(0));

  v = evaluate(single(2, 1, 0, mono({1}), 0, q(1)), point({1, 1}));
  CHECK(v[0].even == q(1));
  CHECK(v[0].odd == q(0));

  v = evaluate(single(2, 1, 0, mono({1}), -1, q(1)), point({1, 1}));
  CHECK(v[0].even == q(0));
  CHECK(v[0].odd == q(1, 2));

  CHECK_THROWS_AS(evaluate(r, point({0, 0})), SingularPoint);
  CHECK_THROWS_AS(evaluate(r, point({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("exact evaluation agrees with floating-point evaluation") {
  const auto f = random_test_function(4, 3, 3, Rational(1, 2), 42);
  for (const auto& x : sample_points(4, 10, 5, 9)) {
    std::vector<double> xd;
    double r2 = 0;
    for (const auto& c : x) {
      xd.push_back(c.get_d());
      r2 += c.get_d() * c.get_d();
    }
    const double r = std::sqrt(r2);
    const auto exact = evaluate(f, x);
    const auto num = evaluate_numeric(f, xd);
    for (std::size_t a = 0; a < exact.size(); ++a) {
      const std::complex<double> e(exact[a].even.re.get_d() + exact[a].odd.re.get_d() * r,
                                   exact[a].even.im.get_d() + exact[a].odd.im.get_d() * r);
      CHECK(std::abs(e * std::exp(-0.5 * r) - num[a]) <= 1e-12 * (1 + std::abs(num[a])));
    }
  }
}

TEST_CASE("exact derivative matches central finite differences") {
  const auto f = random_test_function(3, 2, 2, Rational(1, 3), 7);
  const std::vector<double> x{0.7, -1.1, 0.45};
  const double h = 1e-5;
  for (int nu = 0; nu < 3; ++nu) {
    auto xp = x, xm = x;
    xp[static_cast<std::size_t>(nu)] += h;
    xm[static_cast<std::size_t>(nu)] -= h;
    const auto fp = evaluate_numeric(f, xp), fm = evaluate_numeric(f, xm);
    const auto g = evaluate_numeric(f.derivative(nu), x);
    for (std::size_t a = 0; a < g.size(); ++a) CHECK(std::abs((fp[a] - fm[a]) / (2 * h) - g[a]) < 1e-6);
  }
}

TEST_CASE("random test functions are deterministic, distinct and degree bounded") {
  const auto a = random_test_function(3, 2, 2, Rational(1), 1);
  const auto b = random_test_function(3, 2, 2, Rational(1), 2);
  const auto c = random_test_function(3, 2, 2, Rational(1), 3);
  const auto a2 = random_test_function(3, 2, 2, Rational(1), 1);
  CHECK_FALSE(is_zero_function(a - b, 20, 1));
  CHECK_FALSE(is_zero_function(b - c, 20, 1));
  CHECK_FALSE(is_zero_function(a - c, 20, 1));
  CHECK(is_zero_function(a - a2, 20, 1));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_test_function(5, 3, 2, Rational(1), s);
    CHECK_FALSE(f.empty());
    for (int k = 0; k < f.ncomp(); ++k) {
      CHECK_FALSE(f.component(k).empty());
      for (const auto& t : f.component(k)) CHECK(t.mono.degree() <= 2);
    }
  }
}

TEST_CASE("zero testing") {
  CHECK(is_zero_function(WaveFunction(3, 1, Rational(1)), 20, 5));
  const auto z = zero_test(single(3, 1, 0, mono({1}), 0, q(1)), 20, 5);
  CHECK_FALSE(z.zero);
  REQUIRE(z.witness.has_value());
  CHECK(sgn((*z.witness)[0]) != 0);

  // sum x_nu^2 - r^2 is a representation of zero
  WaveFunction f(3, 1, Rational(1));
  for (int nu = 0; nu < 3; ++nu) f.add(0, mono({}) + Monomial::unit(nu) + Monomial::unit(nu), 0, q(1));
  f.add(0, Monomial{}, 2, q(-1));
  CHECK_FALSE(f.empty());
  const auto zf = zero_test(f, 20, 5);
  CHECK(zf.zero);
  CHECK(zf.false_zero_bound < 1e-15);
}

TEST_CASE("normal-ordered composition agrees with successive application") {
  for (auto kind : {PotentialKind::coulomb, PotentialKind::spinor, PotentialKind::vector}) {
    const auto ms = make_model(3, kind, Rational(3, 2), Rational(2, 3));
    const auto K = build_lrl(ms);
    const auto H = build_hamiltonian(ms);
    const auto f = random_test_function(3, ms.ncomp(), 2, Rational(1, 2), 17);
    CHECK(is_zero_function(apply(K[0] * K[1], f) - apply_chain({&K[0], &K[1]}, f), 20, 2));
    CHECK(is_zero_function(apply(commutator(K[2], H), f) - (apply(K[2], apply(H, f)) - apply(H, apply(K[2], f))), 20, 2));
    CHECK(is_zero_function(apply(commutator(K[2], H), f), 20, 2));
  }
}

TEST_CASE("Coulomb potential value") {
  const auto ms = make_model(2, PotentialKind::coulomb, Rational(1), Rational(1));
  const auto m = matrix_at(build_potential(ms), point({3, 4}));
  CHECK(m[0][0].even == q(-1, 5));
  CHECK(m[0][0].odd == q(0));
}

TEST_CASE("vector potential in d=3 on the x3 axis is the projector e3 e3^T") {
  const auto ms = make_model(3, PotentialKind::vector, Rational(1), Rational(1));
  const auto m = matrix_at(build_potential(ms), point({0, 0, 1}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(m[a][b].even == q(a == 2 && b == 2 ? 1 : 0));
      CHECK(m[a][b].odd == q(0));
    }
}

TEST_CASE("extended vector potential carries the extra (d-1) alpha/2r entry") {
  const auto ms = make_model(4, PotentialKind::vector_extended, Rational(1), Rational(2));
  const auto m = matrix_at(build_potential(ms), point({0, 0, 0, 2}));
  CHECK(m[0][0].even == q(3, 2));
  CHECK(m[4][4].even == q(3, 2));
  CHECK(m[1][1].even == q(1, 2));
  CHECK(m[0][4].even == q(0));
}

TEST_CASE("spinor potential is Hermitian at rational points") {
  const auto ms = make_model(3, PotentialKind::spinor, Rational(1), Rational(3, 4));
  const auto V = build_potential(ms);
  for (const auto& x : sample_points(3, 5, 6, 11)) {
    const auto m = matrix_at(V, x);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        CHECK(m[a][b].even == conj(m[b][a].even));
        CHECK(m[a][b].odd == conj(m[b][a].odd));
      }
  }
}

TEST_CASE("incompatible representation and potential are rejected") {
  auto ms = make_model(3, PotentialKind::coulomb, Rational(1), Rational(1));
  ms.potential = PotentialKind::vector;
  CHECK_THROWS_AS(build_hamiltonian(ms), IncompatibleKind);
  CHECK_THROWS_AS(make_model(1, PotentialKind::coulomb, Rational(1), Rational(1)), InvalidDimension);
  CHECK_THROWS_AS(make_model(3, PotentialKind::coulomb, Rational(0), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_model(3, PotentialKind::coulomb, Rational(1), Rational(-1)), std::invalid_argument);
}

TEST_CASE("angular momenta") {
  const auto ms = make_model(4, PotentialKind::coulomb, Rational(1), Rational(1));
  const auto J = build_angular_momenta(ms);
  CHECK(J.size() == 6);
  for (const auto& j : J) CHECK(j.order() == 1);
  // J_12 annihilates x1^2 + x2^2
  WaveFunction f(4, 1, Rational(1));
  f.add(0, mono({2}), 0, q(1));
  f.add(0, mono({0, 2}), 0, q(1));
  f.add(0, mono({0, 0, 1}), 1, q(3));
  CHECK(is_zero_function(apply(J[0], f), 20, 4));
}

TEST_CASE("J_12 acts symmetrically under the L2 inner product") {
  // Midpoint rule on a box; integrands decay like exp(-r) and are smooth away from the origin.
  const auto ms = make_model(2, PotentialKind::spinor, Rational(1), Rational(1));
  const auto J = build_angular_momenta(ms);
  WaveFunction f(2, 2, Rational(1)), g(2, 2, Rational(1));
  f.add(0, mono({1}), 0, q(1));
  f.add(1, mono({0, 2}), 0, GaussRational(Rational(0), Rational(1)));
  g.add(0, mono({1, 1}), 0, q(2));
  g.add(1, mono({}), 1, q(-1));
  const auto Jf = apply(J[0], f), Jg = apply(J[0], g);
  std::complex<double> lhs = 0, rhs = 0;
  const int n = 600;
  const double L = 24, h = 2 * L / n;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::vector<double> x{-L + (i + 0.5) * h, -L + (k + 0.5) * h};
      const auto gv = evaluate_numeric(g, x), jfv = evaluate_numeric(Jf, x);
      const auto jgv = evaluate_numeric(Jg, x), fv = evaluate_numeric(f, x);
      for (int a = 0; a < 2; ++a) {
        lhs += std::conj(gv[a]) * jfv[a];
        rhs += std::conj(jgv[a]) * fv[a];
      }
    }
  lhs *= h * h;
  rhs *= h * h;
  CHECK(std::abs(lhs) > 1e-2);
  CHECK(std::abs(lhs - rhs) < 1e-4 * std::abs(lhs));
}

TEST_CASE("LRL vector component counts") {
  CHECK(build_lrl(make_model(3, PotentialKind::coulomb, Rational(1), Rational(1))).size() == 3);
  CHECK(build_lrl(make_model(2, PotentialKind::spinor, Rational(1), Rational(1))).size() == 2);
  CHECK(build_lrl(make_model(5, PotentialKind::vector, Rational(1), Rational(1))).size() == 5);
}

TEST_CASE("D on a radial function is (d-1)/2") {
  for (int d = 2; d <= 5; ++d) {
    const auto ms = make_model(d, PotentialKind::spinor, Rational(1), Rational(1));
    const int n = ms.ncomp();
    WaveFunction f(d, n, Rational(1, 2));
    for (int a = 0; a < n; ++a) f.add(a, Monomial{}, a % 2, q(a + 1));
    CHECK(is_zero_function(apply(build_dirac_D(ms), f) - q(d - 1, 2) * f, 20, 1));
  }
  CHECK_THROWS_AS(build_dirac_D(make_model(3, PotentialKind::vector, Rational(1), Rational(1))), IncompatibleKind);
}

TEST_CASE("gradient of the Coulomb potential") {
  const Rational alpha(5, 3);
  const auto ms = make_model(3, PotentialKind::coulomb, Rational(1), alpha);
  const auto grad = gradient_potential(ms);
  REQUIRE(grad.size() == 3);
  for (int nu = 0; nu < 3; ++nu) {
    const auto expect = DiffOperator::scalar_function(3, 1, Monomial::unit(nu), -3, GaussRational(alpha));
    const auto f = random_test_function(3, 1, 2, Rational(1), static_cast<std::uint64_t>(nu));
    CHECK(is_zero_function(apply(grad[static_cast<std::size_t>(nu)] - expect, f), 20, 1));
  }
}

TEST_CASE("potential conditions hold for every kind") {
  for (int d = 2; d <= 5; ++d)
    for (auto kind : {PotentialKind::coulomb, PotentialKind::spinor, PotentialKind::vector, PotentialKind::vector_extended}) {
      CAPTURE(d);
      CAPTURE(to_string(kind));
      const auto rep = verify_potential_conditions(make_model(d, kind, Rational(3, 2), Rational(2, 3)));
      CHECK(rep.passed);
      CHECK(rep.checked.at("potential_euler") == 2);
    }
}

TEST_CASE("broken potentials are caught") {
  const auto ms = make_model(3, PotentialKind::coulomb, Rational(1), Rational(1));
  const auto V = build_potential(ms) + DiffOperator::scalar_function(3, 1, Monomial{}, 1, q(1, 100));
  const auto rep = verify_potential_conditions(ms, V);
  CHECK_FALSE(rep.passed);
  CHECK(rep.failed("potential_euler"));
  CHECK_FALSE(rep.failed("potential_rotation_invariance"));
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front().witness.has_value());

  const auto sp = make_model(3, PotentialKind::spinor, Rational(1), Rational(1));
  const auto g = build_gamma(3);
  const auto V1 = DiffOperator::matrix_function(3, g[0], Monomial::unit(0), -2);
  const auto rep1 = verify_potential_conditions(sp, V1);
  CHECK(rep1.failed("potential_rotation_invariance"));
}

TEST_CASE("symmetry algebra") {
  const auto s4 = verify_symmetry_algebra(make_model(4, PotentialKind::coulomb, Rational(3, 2), Rational(2, 3)));
  CHECK(s4.passed);
  CHECK(s4.checked.at("K_K_closure") == 12);
  CHECK(verify_symmetry_algebra(make_model(3, PotentialKind::spinor, Rational(1, 2), Rational(3))).passed);
  VerifyOptions opt;
  opt.npoints = 20;
  opt.nfunctions = 2;
  const auto v5 = verify_symmetry_algebra(make_model(5, PotentialKind::vector, Rational(2), Rational(1, 3)), opt);
  CHECK(v5.passed);
  CHECK(v5.checked.at("J_J_algebra") == 2 * 45);
  CHECK(verify_symmetry_algebra(make_model(4, PotentialKind::vector_extended, Rational(1), Rational(1))).passed);
}

TEST_CASE("the K_K closure has a definite sign") {
  const auto ms = make_model(3, PotentialKind::coulomb, Rational(1), Rational(1));
  const auto K = build_lrl(ms);
  const auto J = build_angular_momenta(ms);
  const auto H = build_hamiltonian(ms);
  auto f = random_test_function(3, 1, 2, Rational(1, 2), 5);
  f.add(0, mono({1, 0, 1}), 0, q(1));
  const auto lhs = apply(commutator(K[0], K[1]), f);
  const auto jh = apply(J[0] * H, f);
  CHECK_FALSE(is_zero_function(jh, 20, 1));
  CHECK(is_zero_function(lhs + GaussRational(Rational(0), Rational(2)) * jh, 20, 1));
  CHECK_FALSE(is_zero_function(lhs - GaussRational(Rational(0), Rational(2)) * jh, 20, 1));
}

TEST_CASE("Dirac-type operator identities") {
  CHECK(verify_appendixA(make_model(3, PotentialKind::spinor, Rational(1), Rational(1))).passed);
  const auto r4 = verify_appendixA(make_model(4, PotentialKind::spinor, Rational(1), Rational(1)));
  CHECK(r4.passed);
  CHECK(r4.checked.at("D_square") == 2);
  CHECK(verify_appendixA(make_model(2, PotentialKind::spinor, Rational(1), Rational(1))).passed);
  const auto sc = verify_appendixA(make_model(4, PotentialKind::coulomb, Rational(1), Rational(1)));
  CHECK(sc.passed);
  CHECK(sc.checked.at("laplacian_decomposition") == 2);
  CHECK_THROWS_AS(verify_appendixA(make_model(3, PotentialKind::vector, Rational(1), Rational(1))), IncompatibleKind);
}

TEST_CASE("the D(D+1) form of the Laplacian decomposition does not hold") {
  const int d = 3;
  const auto ms = make_model(d, PotentialKind::spinor, Rational(1), Rational(1));
  const int n = ms.ncomp();
  const auto D = build_dirac_D(ms);
  const auto I = DiffOperator::identity(d, n);
  DiffOperator dr(d, n);
  for (int nu = 0; nu < d; ++nu)
    dr += DiffOperator::scalar_function(d, n, Monomial::unit(nu), -1, q(1)) * DiffOperator::partial(d, n, nu);
  const auto rm = [&](int k, const GaussRational& c) { return DiffOperator::scalar_function(d, n, Monomial{}, k, c); };
  const auto base = build_laplacian_momentum(ms) + dr * dr + rm(-1, q(d - 1)) * dr + rm(-2, q((d - 1) * (d - 3), 4));
  const auto f = random_test_function(d, n, 2, Rational(1, 2), 3);
  CHECK(is_zero_function(apply(base - rm(-2, q(1)) * D * (D - I), f), 20, 1));
  CHECK_FALSE(is_zero_function(apply(base - rm(-2, q(1)) * D * (D + I), f), 20, 1));
}

TEST_CASE("spin-1 identities") {
  for (int d = 3; d <= 5; ++d) {
    CAPTURE(d);
    const auto rep = verify_spin1_identities(make_model(d, PotentialKind::vector, Rational(3, 2), Rational(2, 3)));
    CHECK(rep.passed);
    CHECK(rep.checked.at("radial_reduction") == 2);
  }
  CHECK_THROWS_AS(verify_spin1_identities(make_model(3, PotentialKind::spinor, Rational(1), Rational(1))), IncompatibleKind);
}

TEST_CASE("the SL V identity needs the -dV term") {
  const int d = 4;
  const auto ms = make_model(d, PotentialKind::vector, Rational(1), Rational(1));
  const int n = ms.ncomp();
  const auto L = build_orbital_momenta(ms);
  DiffOperator SL(d, n);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu)
      SL += DiffOperator::constant(d, ms.rep.S(mu, nu)) * L[static_cast<std::size_t>(pair_index(d, mu, nu))];
  const auto V = build_potential(ms);
  const auto I = DiffOperator::identity(d, n);
  const auto common = SL * V + V * SL -
                      DiffOperator::scalar_function(d, n, Monomial{}, -1, q(1)) * (q(d - 2) * SL + q(2 + d * (d - 3), 2) * I);
  const auto f = random_test_function(d, n, 2, Rational(1, 2), 9);
  CHECK(is_zero_function(apply(common + q(d) * V, f), 20, 1));
  CHECK_FALSE(is_zero_function(apply(common - q(d - 2) * V, f), 20, 1));
}
