#include "lrl/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lrl {

namespace {

GaussRational q(long p, long d = 1) { return GaussRational(frac(p, d)); }

ExactMatrix unit_entry(int n, int a, int b) {
  ExactMatrix e = ExactMatrix::Constant(n, n, GaussRational(0));
  e(a, b) = GaussRational(1);
  return e;
}

class Checker {
 public:
  Checker(const ModelSpec& ms, const VerifyOptions& opt) : ms_(ms), opt_(opt) {
    if (opt.npoints < 1) throw std::invalid_argument("npoints must be at least 1");
    if (opt.nfunctions < 1) throw std::invalid_argument("nfunctions must be at least 1");
  }

  std::vector<WaveFunction> test_functions() const {
    std::vector<WaveFunction> fs;
    for (int k = 0; k < opt_.nfunctions; ++k)
      fs.push_back(random_test_function(ms_.d, ms_.ncomp(), opt_.max_degree, Rational(1, 2),
                                        opt_.seed * 7919 + static_cast<std::uint64_t>(k)));
    return fs;
  }

  void expect_zero(const std::string& id, std::vector<int> indices, const WaveFunction& residual) {
    rep_.count(id);
    const ZeroTest z = zero_test(residual, opt_.npoints, opt_.seed + 104729 * rep_.checked[id]);
    worst_bound_ = std::max(worst_bound_, z.false_zero_bound);
    if (!z.zero) rep_.fail({id, std::move(indices), "nonzero", z.witness});
  }

  CheckReport finish() {
    std::ostringstream os;
    os << "false-zero probability per check <= " << worst_bound_ << " (" << opt_.npoints << " points, "
       << opt_.nfunctions << " test functions)";
    rep_.notes.push_back(os.str());
    return std::move(rep_);
  }

 private:
  const ModelSpec& ms_;
  VerifyOptions opt_;
  CheckReport rep_;
  double worst_bound_ = 0.0;
};

// Sum over mu < nu of S_mu_nu X_mu_nu for the pair list X.
DiffOperator spin_contract(const ModelSpec& ms, const std::vector<DiffOperator>& X) {
  DiffOperator out(ms.d, ms.ncomp());
  for (int mu = 0; mu < ms.d; ++mu)
    for (int nu = mu + 1; nu < ms.d; ++nu)
      out += DiffOperator::constant(ms.d, ms.rep.S(mu, nu)) * X[static_cast<std::size_t>(pair_index(ms.d, mu, nu))];
  return out;
}

DiffOperator radial_derivative(int d, int n) {
  DiffOperator dr(d, n);
  for (int nu = 0; nu < d; ++nu)
    dr += DiffOperator::scalar_function(d, n, Monomial::unit(nu), -1, q(1)) * DiffOperator::partial(d, n, nu);
  return dr;
}

DiffOperator r_power(int d, int n, int k, const GaussRational& c = q(1)) {
  return DiffOperator::scalar_function(d, n, Monomial{}, k, c);
}

// P_ab = p_a p_b on the vector indices starting at offset.
DiffOperator momentum_dyad(const ModelSpec& ms, int off) {
  DiffOperator P(ms.d, ms.ncomp());
  for (int a = 0; a < ms.d; ++a)
    for (int b = 0; b < ms.d; ++b) {
      Monomial g = Monomial::unit(a) + Monomial::unit(b);
      P.add_term(OpKey{Monomial{}, 0, g}, GaussRational(-1) * unit_entry(ms.ncomp(), a + off, b + off));
    }
  return P;
}

// Q of the Casimir relation.
DiffOperator casimir_q(const ModelSpec& ms, const DiffOperator& V, const std::vector<DiffOperator>& J) {
  const int d = ms.d, n = ms.ncomp();
  const GaussRational m(ms.mass);
  DiffOperator SS(d, n), SSpp(d, n);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      if (mu == nu) continue;
      SS += DiffOperator::constant(d, multiply(ms.rep.S(mu, nu), ms.rep.S(mu, nu)));
    }
  for (int la = 0; la < d; ++la)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        if (la == mu || la == nu) continue;
        const ExactMatrix ss = multiply(ms.rep.S(la, mu), ms.rep.S(la, nu));
        if (is_exact_zero(ss)) continue;
        SSpp += DiffOperator::constant(d, ss) * DiffOperator::momentum(d, n, mu) * DiffOperator::momentum(d, n, nu);
      }
  const DiffOperator SJ = q(2) * spin_contract(ms, J);
  return q(-1, 2) * (SS * build_laplacian_momentum(ms)) + SSpp - (m * q(1, 2)) * (SJ * V + V * SJ) +
         (m * m) * (r_power(d, n, 2) * V * V);
}

}  // namespace

CheckReport verify_potential_conditions(const ModelSpec& ms, const VerifyOptions& opt) {
  return verify_potential_conditions(ms, build_potential(ms), opt);
}

CheckReport verify_potential_conditions(const ModelSpec& ms, const DiffOperator& V, const VerifyOptions& opt) {
  validate(ms);
  if (V.d() != ms.d || V.ncomp() != ms.ncomp()) throw DimensionMismatch("potential does not match the model");
  const int d = ms.d, n = ms.ncomp();
  Checker ck(ms, opt);
  const auto J = build_angular_momenta(ms);
  const auto grad = gradient(V);
  DiffOperator euler = V;
  for (int nu = 0; nu < d; ++nu) euler += DiffOperator::position(d, n, nu) * grad[static_cast<std::size_t>(nu)];
  std::vector<DiffOperator> spin;
  for (int mu = 0; mu < d; ++mu) {
    DiffOperator s(d, n);
    for (int nu = 0; nu < d; ++nu) {
      if (nu == mu) continue;
      s += anticommutator(DiffOperator::constant(d, ms.rep.S(mu, nu)), grad[static_cast<std::size_t>(nu)]);
    }
    spin.push_back(std::move(s));
  }
  for (const auto& f : ck.test_functions()) {
    const WaveFunction Vf = apply(V, f);
    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu) {
        const auto& j = J[static_cast<std::size_t>(pair_index(d, mu, nu))];
        ck.expect_zero("potential_rotation_invariance", {mu + 1, nu + 1}, apply(V, apply(j, f)) - apply(j, Vf));
      }
    ck.expect_zero("potential_euler", {}, apply(euler, f));
    for (int mu = 0; mu < d; ++mu) ck.expect_zero("potential_spin", {mu + 1}, apply(spin[static_cast<std::size_t>(mu)], f));
  }
  return ck.finish();
}

CheckReport verify_symmetry_algebra(const ModelSpec& ms, const VerifyOptions& opt) {
  validate(ms);
  const int d = ms.d, n = ms.ncomp();
  Checker ck(ms, opt);
  const DiffOperator H = build_hamiltonian(ms);
  const DiffOperator V = build_potential(ms);
  const auto J = build_angular_momenta(ms);
  const auto K = build_lrl(ms);
  const GaussRational i = GaussRational::i();
  const GaussRational two_i_over_m = GaussRational(Rational(0), Rational(2) / ms.mass);
  const GaussRational m(ms.mass);
  DiffOperator C(d, n);
  for (const auto& j : J) C += j * j;
  const DiffOperator casimir_rhs =
      (q(2) * m) * ((C + q((d - 1) * (d - 1), 4) * DiffOperator::identity(d, n)) * H) + casimir_q(ms, V, J);

  for (const auto& f : ck.test_functions()) {
    const WaveFunction Hf = apply(H, f);
    std::vector<WaveFunction> Jf, Kf;
    for (const auto& j : J) Jf.push_back(apply(j, f));
    for (const auto& k : K) Kf.push_back(apply(k, f));
    auto Jfa = [&](int a, int b) {
      if (a < b) return Jf[static_cast<std::size_t>(pair_index(d, a, b))];
      return GaussRational(-1) * Jf[static_cast<std::size_t>(pair_index(d, b, a))];
    };
    auto Ja = [&](int a, int b) -> const DiffOperator& { return J[static_cast<std::size_t>(pair_index(d, a, b))]; };

    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu)
        ck.expect_zero("J_H_commute", {mu + 1, nu + 1},
                       apply(Ja(mu, nu), Hf) - apply(H, Jf[static_cast<std::size_t>(pair_index(d, mu, nu))]));
    for (int mu = 0; mu < d; ++mu)
      ck.expect_zero("K_H_commute", {mu + 1}, apply(K[static_cast<std::size_t>(mu)], Hf) - apply(H, Kf[static_cast<std::size_t>(mu)]));
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu)
        for (int la = nu + 1; la < d; ++la) {
          WaveFunction r = apply(K[static_cast<std::size_t>(mu)], Jf[static_cast<std::size_t>(pair_index(d, nu, la))]) -
                           apply(Ja(nu, la), Kf[static_cast<std::size_t>(mu)]);
          if (mu == la) r -= i * Kf[static_cast<std::size_t>(nu)];
          if (mu == nu) r += i * Kf[static_cast<std::size_t>(la)];
          ck.expect_zero("K_J_vector", {mu + 1, nu + 1, la + 1}, r);
        }
    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu) {
        WaveFunction r = apply(K[static_cast<std::size_t>(mu)], Kf[static_cast<std::size_t>(nu)]) -
                         apply(K[static_cast<std::size_t>(nu)], Kf[static_cast<std::size_t>(mu)]) +
                         two_i_over_m * apply(Ja(mu, nu), Hf);
        ck.expect_zero("K_K_closure", {mu + 1, nu + 1}, r);
      }
    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu)
        for (int la = 0; la < d; ++la)
          for (int si = la + 1; si < d; ++si) {
            if (pair_index(d, la, si) <= pair_index(d, mu, nu)) continue;
            WaveFunction r = apply(Ja(mu, nu), Jfa(la, si)) - apply(Ja(la, si), Jfa(mu, nu));
            if (mu == la) r -= i * Jfa(nu, si);
            if (nu == si) r -= i * Jfa(mu, la);
            if (mu == si) r += i * Jfa(nu, la);
            if (nu == la) r += i * Jfa(mu, si);
            ck.expect_zero("J_J_algebra", {mu + 1, nu + 1, la + 1, si + 1}, r);
          }
    WaveFunction k2(d, n, f.beta());
    for (int mu = 0; mu < d; ++mu) k2 += apply(K[static_cast<std::size_t>(mu)], Kf[static_cast<std::size_t>(mu)]);
    ck.expect_zero("lrl_casimir", {}, (m * m) * k2 - apply(casimir_rhs, f));
  }
  return ck.finish();
}

CheckReport verify_appendixA(const ModelSpec& ms, const VerifyOptions& opt) {
  validate(ms);
  const int d = ms.d, n = ms.ncomp();
  if (ms.potential != PotentialKind::spinor && ms.potential != PotentialKind::coulomb)
    throw IncompatibleKind("Dirac-operator identities need the spinor (or scalar) model");
  Checker ck(ms, opt);
  const DiffOperator I = DiffOperator::identity(d, n);
  const DiffOperator dr = radial_derivative(d, n);
  const DiffOperator p2 = build_laplacian_momentum(ms);
  const DiffOperator radial_part = GaussRational(-1) * (dr * dr) - r_power(d, n, -1, q(d - 1)) * dr;
  const auto J = build_angular_momenta(ms);
  DiffOperator C(d, n);
  for (const auto& j : J) C += j * j;

  if (ms.potential == PotentialKind::coulomb) {
    const DiffOperator lap = p2 - radial_part - r_power(d, n, -2) * C;
    for (const auto& f : ck.test_functions()) ck.expect_zero("laplacian_decomposition", {}, apply(lap, f));
    return ck.finish();
  }

  const DiffOperator D = build_dirac_D(ms);
  const GammaSet g = build_gamma(d);
  DiffOperator gp(d, n), gx(d, n);
  for (int nu = 0; nu < d; ++nu) {
    gp += DiffOperator::constant(d, g[nu]) * DiffOperator::momentum(d, n, nu);
    gx += DiffOperator::constant(d, g[nu]) * DiffOperator::position(d, n, nu);
  }
  const DiffOperator dsr = D * D - C - q((d - 1) * (d - 2), 8) * I;
  const DiffOperator lap =
      p2 - radial_part + r_power(d, n, -2, q((d - 1) * (d - 3), 4)) - r_power(d, n, -2) * D * (D - I);
  for (const auto& f : ck.test_functions()) {
    const WaveFunction Df = apply(D, f);
    ck.expect_zero("D_anticommutes_gamma_p", {}, apply(D, apply(gp, f)) + apply(gp, Df));
    ck.expect_zero("D_anticommutes_gamma_x", {}, apply(D, apply(gx, f)) + apply(gx, Df));
    ck.expect_zero("D_square", {}, apply(dsr, f));
    ck.expect_zero("laplacian_decomposition", {}, apply(lap, f));
  }
  return ck.finish();
}

CheckReport verify_spin1_identities(const ModelSpec& ms, const VerifyOptions& opt) {
  validate(ms);
  if (ms.potential != PotentialKind::vector) throw IncompatibleKind("spin-1 identities need the vector model");
  const int d = ms.d, n = ms.ncomp();
  Checker ck(ms, opt);
  const DiffOperator I = DiffOperator::identity(d, n);
  const DiffOperator V = build_potential(ms);
  const DiffOperator H = build_hamiltonian(ms);
  const auto J = build_angular_momenta(ms);
  const auto L = build_orbital_momenta(ms);
  const DiffOperator SL = spin_contract(ms, L);
  const DiffOperator p2 = build_laplacian_momentum(ms);
  const DiffOperator P = momentum_dyad(ms, 0);
  const GaussRational a(ms.alpha), m(ms.mass);

  const DiffOperator slv = SL * V + V * SL -
                           r_power(d, n, -1, a) * (q(d - 2) * SL + q(2 + d * (d - 3), 2) * I) + q(d) * V;

  DiffOperator ss(d, n);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu)
      ss += DiffOperator::constant(d, multiply(ms.rep.S(mu, nu), ms.rep.S(mu, nu)));
  ss -= q(d - 1) * I;

  DiffOperator sspp(d, n);
  for (int la = 0; la < d; ++la)
    for (int mu = 0; mu < d; ++mu)
      for (int nu = 0; nu < d; ++nu) {
        if (la == mu || la == nu) continue;
        sspp += DiffOperator::constant(d, multiply(ms.rep.S(la, mu), ms.rep.S(la, nu))) *
                DiffOperator::momentum(d, n, mu) * DiffOperator::momentum(d, n, nu);
      }
  sspp -= p2 + q(d - 2) * P;

  DiffOperator nn(d, n);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu)
      nn += DiffOperator::matrix_function(d, unit_entry(n, mu, nu), Monomial::unit(mu) + Monomial::unit(nu), -2);
  const GaussRational ma = m * a;
  const DiffOperator ac = P - r_power(d, n, -1, ma) * (SL + I - nn) + (ma * ma) * nn;
  const DiffOperator reduction = casimir_q(ms, V, J) + (q(2 * (d - 2)) * m) * H -
                                 (ma * ma * q((d - 3) * (d - 3), 4)) * I - q(d - 2) * ac;

  for (const auto& f : ck.test_functions()) {
    ck.expect_zero("spin1_SL_V", {}, apply(slv, f));
    ck.expect_zero("spin1_casimir", {}, apply(ss, f));
    ck.expect_zero("spin1_SS_pp", {}, apply(sspp, f));
    ck.expect_zero("radial_reduction", {}, apply(reduction, f));
  }
  return ck.finish();
}

}  // namespace lrl
