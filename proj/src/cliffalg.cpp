#include "lrl/cliffalg.hpp"

#include <string>

namespace lrl {

namespace {

ExactMatrix zero(int n) { return ExactMatrix::Zero(n, n); }

std::string norm_string(const ExactMatrix& m) { return to_string(frobenius_norm2(m)); }

}  // namespace

const char* to_string(SpinKind k) {
  switch (k) {
    case SpinKind::scalar: return "scalar";
    case SpinKind::spinor: return "spinor";
    case SpinKind::vector: return "vector";
    case SpinKind::vector_extended: return "vector_extended";
  }
  return "?";
}

SpinRep::SpinRep(int d, SpinKind kind, int dim) : d_(d), kind_(kind), dim_(dim) {
  upper_.assign(static_cast<std::size_t>(d * (d - 1) / 2), zero(dim));
}

std::size_t SpinRep::slot(int mu, int nu) const {
  // mu < nu, row-major over the strict upper triangle
  return static_cast<std::size_t>(mu * d_ - mu * (mu + 1) / 2 + (nu - mu - 1));
}

ExactMatrix SpinRep::S(int mu, int nu) const {
  if (mu == nu) return zero(dim_);
  if (mu < nu) return upper_[slot(mu, nu)];
  return -upper_[slot(nu, mu)];
}

void SpinRep::set(int mu, int nu, ExactMatrix m) {
  if (mu < nu)
    upper_[slot(mu, nu)] = std::move(m);
  else if (mu > nu)
    upper_[slot(nu, mu)] = -m;
}

std::string SpinRep::label() const {
  std::string s = "D(";
  const int rank = d_ / 2;
  for (int i = 0; i < rank; ++i) {
    if (i) s += ",";
    switch (kind_) {
      case SpinKind::scalar: s += "0"; break;
      case SpinKind::spinor: s += (d_ % 2 == 1 && i == rank - 1) ? "-1/2" : "1/2"; break;
      case SpinKind::vector: s += i == 0 ? "1" : "0"; break;
      case SpinKind::vector_extended: s += i == 0 ? "1" : "0"; break;
    }
  }
  s += ")";
  if (kind_ == SpinKind::vector_extended) s += " of so(d+1) restricted to so(d)";
  return s;
}

GammaSet build_gamma(int d) {
  GammaSet g;
  g.d = d;
  g.matrices = gamma_matrices<GaussRational>(d);
  g.dim = static_cast<int>(g.matrices.front().rows());
  return g;
}

ExactMatrix build_chirality(const GammaSet& g) {
  if (g.d % 2 != 0) throw UnsupportedParity("chirality matrix exists only for even d");
  ExactMatrix p = ExactMatrix::Identity(g.dim, g.dim);
  for (const auto& m : g.matrices) p = multiply(p, m);
  // (gamma_1...gamma_d)^2 = (-1)^{d(d-1)/2}
  if ((g.d / 2) % 2 == 1) p = GaussRational::i() * p;
  return p;
}

SpinRep build_scalar_rep(int d) {
  if (d < 1) throw InvalidDimension("scalar representation needs d >= 1");
  return SpinRep(d, SpinKind::scalar, 1);
}

SpinRep build_spin_half(int d) {
  if (d < 2) throw InvalidDimension("spin-1/2 representation needs d >= 2");
  const GammaSet g = build_gamma(d);
  SpinRep s(d, SpinKind::spinor, g.dim);
  // -i/4 [gamma_mu, gamma_nu]: Hermitian normalization of the quarter-commutator
  const GaussRational c(Rational(0), Rational(-1, 4));
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu)
      s.set(mu, nu, c * (multiply(g[mu], g[nu]) - multiply(g[nu], g[mu])));
  return s;
}

SpinRep build_spin_one(int d) {
  if (d < 2) throw InvalidDimension("spin-1 representation needs d >= 2");
  SpinRep s(d, SpinKind::vector, d);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      ExactMatrix m = zero(d);
      m(mu, nu) = -GaussRational::i();
      m(nu, mu) = GaussRational::i();
      s.set(mu, nu, std::move(m));
    }
  return s;
}

SpinRep build_spin_one_extended(int d) {
  if (d < 2) throw InvalidDimension("extended spin-1 representation needs d >= 2");
  SpinRep s(d, SpinKind::vector_extended, d + 1);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      ExactMatrix m = zero(d + 1);
      m(mu + 1, nu + 1) = -GaussRational::i();
      m(nu + 1, mu + 1) = GaussRational::i();
      s.set(mu, nu, std::move(m));
    }
  return s;
}

CheckReport check_clifford(const GammaSet& g) {
  CheckReport rep;
  const ExactMatrix id = ExactMatrix::Identity(g.dim, g.dim);
  for (int mu = 0; mu < g.d; ++mu) {
    const ExactMatrix herm = g[mu] - adjoint(g[mu]);
    rep.count("hermitian");
    if (!is_exact_zero(herm)) rep.fail({"hermitian", {mu + 1}, norm_string(herm), {}});
    for (int nu = mu; nu < g.d; ++nu) {
      ExactMatrix res = multiply(g[mu], g[nu]) + multiply(g[nu], g[mu]);
      if (mu == nu) res -= GaussRational(2) * id;
      rep.count("anticommutator");
      if (!is_exact_zero(res)) rep.fail({"anticommutator", {mu + 1, nu + 1}, norm_string(res), {}});
    }
  }
  return rep;
}

CheckReport check_so_commutations(const SpinRep& s) {
  CheckReport rep;
  const int d = s.d();
  std::vector<ExactMatrix> S(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) S[static_cast<std::size_t>(a * d + b)] = s.S(a, b);
  auto at = [&](int a, int b) -> const ExactMatrix& { return S[static_cast<std::size_t>(a * d + b)]; };
  const GaussRational i = GaussRational::i();
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      const ExactMatrix herm = at(mu, nu) - adjoint(at(mu, nu));
      rep.count("hermitian");
      if (!is_exact_zero(herm)) rep.fail({"hermitian", {mu + 1, nu + 1}, norm_string(herm), {}});
    }
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      rep.count("antisymmetry");
      const ExactMatrix sum = at(mu, nu) + at(nu, mu);
      if (!is_exact_zero(sum)) rep.fail({"antisymmetry", {mu + 1, nu + 1}, norm_string(sum), {}});
    }
  // with antisymmetry, pairs mu < nu and la < si cover every ordered index set
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu)
      for (int la = 0; la < d; ++la)
        for (int si = la + 1; si < d; ++si) {
          ExactMatrix res = multiply(at(mu, nu), at(la, si)) - multiply(at(la, si), at(mu, nu));
          if (mu == la) res -= i * at(nu, si);
          if (nu == si) res -= i * at(mu, la);
          if (mu == si) res += i * at(nu, la);
          if (nu == la) res += i * at(mu, si);
          rep.count("so_commutator");
          if (!is_exact_zero(res))
            rep.fail({"so_commutator", {mu + 1, nu + 1, la + 1, si + 1}, norm_string(res), {}});
        }
  return rep;
}

ExactMatrix casimir(const SpinRep& s) {
  ExactMatrix c = zero(s.dim());
  for (int mu = 0; mu < s.d(); ++mu)
    for (int nu = mu + 1; nu < s.d(); ++nu) {
      const ExactMatrix m = s.S(mu, nu);
      c += multiply(m, m);  // 1/2 * 2 ordered pairs
    }
  return c;
}

}  // namespace lrl
