#include "lrl/model.hpp"

namespace lrl {

namespace {

ExactMatrix zeros(int n) { return ExactMatrix::Constant(n, n, GaussRational(0)); }

ExactMatrix unit_matrix(int n, const GaussRational& c) {
  ExactMatrix m = zeros(n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Monomial pair_monomial(int mu, int nu) {
  Monomial m = Monomial::unit(mu);
  m[nu] += 1;
  return m;
}

}  // namespace

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::coulomb: return "coulomb";
    case PotentialKind::spinor: return "spinor";
    case PotentialKind::vector: return "vector";
    case PotentialKind::vector_extended: return "vector_extended";
  }
  return "?";
}

PotentialKind parse_potential_kind(std::string_view s) {
  if (s == "coulomb" || s == "scalar") return PotentialKind::coulomb;
  if (s == "spinor") return PotentialKind::spinor;
  if (s == "vector") return PotentialKind::vector;
  if (s == "vector_extended") return PotentialKind::vector_extended;
  throw std::invalid_argument("unknown potential kind '" + std::string(s) + "'");
}

ModelSpec make_model(int d, PotentialKind kind, const Rational& mass, const Rational& alpha) {
  if (d < 2 || d > kMaxDim) throw InvalidDimension("model dimension must be in 2.." + std::to_string(kMaxDim));
  if (sgn(mass) <= 0) throw std::invalid_argument("mass must be positive");
  if (sgn(alpha) <= 0) throw std::invalid_argument("alpha must be positive");
  SpinRep rep = [&] {
    switch (kind) {
      case PotentialKind::coulomb: return build_scalar_rep(d);
      case PotentialKind::spinor: return build_spin_half(d);
      case PotentialKind::vector: return build_spin_one(d);
      case PotentialKind::vector_extended: return build_spin_one_extended(d);
    }
    throw std::invalid_argument("unknown potential kind");
  }();
  return ModelSpec{d, std::move(rep), kind, mass, alpha};
}

void validate(const ModelSpec& ms) {
  const SpinKind want = [&] {
    switch (ms.potential) {
      case PotentialKind::coulomb: return SpinKind::scalar;
      case PotentialKind::spinor: return SpinKind::spinor;
      case PotentialKind::vector: return SpinKind::vector;
      case PotentialKind::vector_extended: return SpinKind::vector_extended;
    }
    return SpinKind::scalar;
  }();
  if (ms.rep.kind() != want || ms.rep.d() != ms.d)
    throw IncompatibleKind("potential " + to_string(ms.potential) + " needs a " + to_string(want) +
                           " representation in d=" + std::to_string(ms.d));
}

DiffOperator build_potential(const ModelSpec& ms) {
  validate(ms);
  const int d = ms.d, n = ms.ncomp();
  const GaussRational a(ms.alpha);
  DiffOperator v(d, n);
  switch (ms.potential) {
    case PotentialKind::coulomb:
      v += DiffOperator::scalar_function(d, n, Monomial{}, -1, -a);
      break;
    case PotentialKind::spinor: {
      const GammaSet g = build_gamma(d);
      for (int nu = 0; nu < d; ++nu)
        v += DiffOperator::matrix_function(d, ExactMatrix(g[nu] * a), Monomial::unit(nu), -2);
      break;
    }
    case PotentialKind::vector:
    case PotentialKind::vector_extended: {
      const int off = ms.potential == PotentialKind::vector ? 0 : 1;
      ExactMatrix diag = zeros(n);
      for (int mu = 0; mu < d; ++mu) diag(mu + off, mu + off) = a * GaussRational(frac(d - 3, 2));
      if (off == 1) diag(0, 0) = a * GaussRational(frac(d - 1, 2));
      v += DiffOperator::matrix_function(d, diag, Monomial{}, -1);
      for (int mu = 0; mu < d; ++mu)
        for (int nu = 0; nu < d; ++nu) {
          ExactMatrix e = zeros(n);
          e(mu + off, nu + off) = a;
          v += DiffOperator::matrix_function(d, e, pair_monomial(mu, nu), -3);
        }
      break;
    }
  }
  return v;
}

DiffOperator build_laplacian_momentum(const ModelSpec& ms) {
  const int d = ms.d, n = ms.ncomp();
  DiffOperator p2(d, n);
  for (int nu = 0; nu < d; ++nu) {
    Monomial g;
    g[nu] = 2;
    p2.add_term(OpKey{Monomial{}, 0, g}, unit_matrix(n, GaussRational(-1)));
  }
  return p2;
}

DiffOperator build_hamiltonian(const ModelSpec& ms) {
  return GaussRational(Rational(1) / (2 * ms.mass)) * build_laplacian_momentum(ms) + build_potential(ms);
}

int pair_index(int d, int mu, int nu) {
  if (!(0 <= mu && mu < nu && nu < d)) throw std::out_of_range("pair index needs 0 <= mu < nu < d");
  return mu * d - mu * (mu + 1) / 2 + (nu - mu - 1);
}

std::vector<DiffOperator> build_orbital_momenta(const ModelSpec& ms) {
  const int d = ms.d, n = ms.ncomp();
  std::vector<DiffOperator> out;
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu)
      out.push_back(DiffOperator::position(d, n, mu) * DiffOperator::momentum(d, n, nu) -
                    DiffOperator::position(d, n, nu) * DiffOperator::momentum(d, n, mu));
  return out;
}

std::vector<DiffOperator> build_angular_momenta(const ModelSpec& ms) {
  validate(ms);
  auto out = build_orbital_momenta(ms);
  for (int mu = 0; mu < ms.d; ++mu)
    for (int nu = mu + 1; nu < ms.d; ++nu)
      out[static_cast<std::size_t>(pair_index(ms.d, mu, nu))] += DiffOperator::constant(ms.d, ms.rep.S(mu, nu));
  return out;
}

DiffOperator pair_entry(const std::vector<DiffOperator>& list, int d, int mu, int nu) {
  if (mu == nu) return DiffOperator(list.front().d(), list.front().ncomp());
  if (mu < nu) return list.at(static_cast<std::size_t>(pair_index(d, mu, nu)));
  return GaussRational(-1) * list.at(static_cast<std::size_t>(pair_index(d, nu, mu)));
}

std::vector<DiffOperator> build_lrl(const ModelSpec& ms) {
  const int d = ms.d, n = ms.ncomp();
  const auto J = build_angular_momenta(ms);
  const DiffOperator V = build_potential(ms);
  const GaussRational half_inv_m(Rational(1) / (2 * ms.mass));
  std::vector<DiffOperator> out;
  for (int mu = 0; mu < d; ++mu) {
    DiffOperator k(d, n);
    for (int nu = 0; nu < d; ++nu) {
      if (nu == mu) continue;
      const DiffOperator j = pair_entry(J, d, mu, nu);
      const DiffOperator p = DiffOperator::momentum(d, n, nu);
      k += p * j + j * p;
    }
    k *= half_inv_m;
    k += DiffOperator::position(d, n, mu) * V;
    out.push_back(std::move(k));
  }
  return out;
}

DiffOperator build_dirac_D(const ModelSpec& ms) {
  validate(ms);
  if (ms.potential != PotentialKind::spinor) throw IncompatibleKind("D is defined for the spinor model only");
  const int d = ms.d, n = ms.ncomp();
  const GammaSet g = build_gamma(d);
  DiffOperator D = DiffOperator::identity(d, n);
  D *= GaussRational(frac(d - 1, 2));
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      if (mu == nu) continue;
      const ExactMatrix gg = multiply(g[mu], g[nu]);
      const DiffOperator l = DiffOperator::position(d, n, nu) * DiffOperator::partial(d, n, mu) -
                             DiffOperator::position(d, n, mu) * DiffOperator::partial(d, n, nu);
      D += GaussRational(Rational(1, 2)) * (DiffOperator::constant(d, gg) * l);
    }
  return D;
}

std::vector<DiffOperator> gradient(const DiffOperator& V) {
  if (V.order() != 0) throw std::invalid_argument("gradient needs a multiplication operator");
  const int d = V.d(), n = V.ncomp();
  std::vector<DiffOperator> out(static_cast<std::size_t>(d), DiffOperator(d, n));
  for (const auto& [k, m] : V.terms()) {
    WaveFunction c(d, 1, Rational(0));
    c.add(0, k.xpow, k.rpow, GaussRational(1));
    for (int nu = 0; nu < d; ++nu) {
      const WaveFunction dc = c.derivative(nu);
      for (const auto& t : dc.component(0)) {
        ExactMatrix mm = m;
        for (Eigen::Index j = 0; j < mm.cols(); ++j)
          for (Eigen::Index i = 0; i < mm.rows(); ++i)
            if (!mm(i, j).is_zero()) mm(i, j) *= t.coeff;
        out[static_cast<std::size_t>(nu)].add_term(OpKey{t.mono, t.rpow, Monomial{}}, mm);
      }
    }
  }
  return out;
}

std::vector<DiffOperator> gradient_potential(const ModelSpec& ms) { return gradient(build_potential(ms)); }

}  // namespace lrl
