#include "lrl/radial.hpp"

#include "lrl/cliffalg.hpp"
#include "lrl/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace lrl {

namespace {

void require_positive(const Rational& m, const Rational& alpha) {
  if (sgn(m) <= 0 || sgn(alpha) <= 0) throw std::invalid_argument("m and alpha must be positive");
}

bool is_half_odd(const Rational& j) {
  // j = (2k+1)/2
  return j.get_den() == 2 && sgn(j) > 0;
}

Rational half(int k) { return frac(k, 2); }

/// Coefficients of 1F1(-n; b; x) in powers of x.
std::vector<Rational> kummer_coefficients(int n, const Rational& b) {
  std::vector<Rational> a{Rational(1)};
  for (int k = 0; k < n; ++k) a.push_back(a.back() * Rational(k - n) / ((b + k) * (k + 1)));
  return a;
}

/// Largest power of r appearing in f.
double max_power(const RadialExpansion& f) {
  double p = 0;
  for (int c = 0; c < f.nchan(); ++c)
    for (const auto& [k, v] : f.component(c)) p = std::max(p, k.first.get_d());
  return p;
}

/// Adaptive integral over (0, inf) of a function decaying like exp(-2 b r) r^{2p}.
double integrate_decaying(const std::function<double(double)>& g, double b, double p) {
  const double R = (2 * p + 80) / b;
  QuadratureRule rule;
  rule.target = 1e-13;
  rule.max_refinements = 24;
  return integrate(g, 0, R / 16, rule) + integrate(g, R / 16, R, rule);
}

RadialFunctionSample finish_sample(std::vector<double> r, std::vector<std::vector<double>> values, double norm2) {
  if (!(norm2 > 0) || !std::isfinite(norm2)) throw NonConvergence("radial function has no finite positive norm");
  RadialFunctionSample s;
  s.normalization = 1 / std::sqrt(norm2);
  for (auto& ch : values)
    for (auto& v : ch) v *= s.normalization;
  s.r = std::move(r);
  s.values = std::move(values);
  s.nodes = node_count(s);
  return s;
}

/// Checks that the grid resolves the sampled state: the grid quadrature of the normalized density
/// must reproduce 1.
void check_grid_norm(const RadialFunctionSample& s, const std::vector<double>& weight, int weight_rpow) {
  std::vector<double> dens(s.r.size(), 0.0);
  for (std::size_t c = 0; c < s.values.size(); ++c)
    for (std::size_t i = 0; i < s.r.size(); ++i)
      dens[i] += weight[c] * std::pow(s.r[i], weight_rpow) * s.values[c][i] * s.values[c][i];
  const double q = integrate_samples(s.r, dens);
  if (std::abs(q - 1) > 1e-6)
    throw InvalidGrid("grid does not resolve the state (grid norm " + std::to_string(q) + ")");
}

RadialOperator scalar_multiply(int nchan, const Rational& c, int q) {
  return RadialOperator::multiply(RatMatrix::identity(nchan, c), q);
}

}  // namespace

const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::scalar: return "scalar";
    case ChannelKind::spinor: return "spinor";
    case ChannelKind::vector_coupled: return "vector";
    case ChannelKind::vector_transverse: return "vector_transverse";
  }
  return "?";
}

Eigen::MatrixXd RadialProblem::potential_matrix(double r) const {
  Eigen::MatrixXd M(nchan, nchan);
  for (int i = 0; i < nchan; ++i)
    for (int j = 0; j < nchan; ++j)
      M(i, j) = (C(i, j).get_d() / (r * r) + G(i, j).get_d() / r) * channel_scale[static_cast<std::size_t>(i)] /
                channel_scale[static_cast<std::size_t>(j)];
  return M;
}

RadialOperator RadialProblem::hamiltonian() const {
  RadialOperator h(nchan);
  h.add_term(2, 0, RatMatrix::identity(nchan, -1));
  h.add_term(0, -2, C);
  h.add_term(0, -1, G);
  return h;
}

RadialOperator LadderOp::lowering() const {
  RadialOperator a(w_const.n);
  a.add_term(1, 0, RatMatrix::identity(w_const.n, -1));
  a.add_term(0, -1, w_inv_r);
  a.add_term(0, 0, w_const);
  return a;
}

RadialOperator LadderOp::raising() const {
  RadialOperator a(w_const.n);
  a.add_term(1, 0, RatMatrix::identity(w_const.n));
  a.add_term(0, -1, w_inv_r);
  a.add_term(0, 0, w_const);
  return a;
}

RadialOperator LadderOp::factorized() const {
  return raising() * lowering() + scalar_multiply(w_const.n, c, 0);
}

RadialOperator LadderOp::partner() const {
  return lowering() * raising() + scalar_multiply(w_const.n, c, 0);
}

// -- scalar --------------------------------------------------------------------------------

RadialProblem scalar_channel_mu(const Rational& mu, const Rational& m, const Rational& alpha) {
  require_positive(m, alpha);
  RadialProblem p;
  p.kind = ChannelKind::scalar;
  p.nchan = 1;
  p.m = m;
  p.alpha = alpha;
  p.quantum.mu = mu;
  p.C(0, 0) = mu * (mu + 1);
  p.G(0, 0) = -2 * m * alpha;
  return p;
}

RadialProblem scalar_channel(int d, int l, const Rational& m, const Rational& alpha) {
  if (d < 2) throw InvalidDimension("scalar radial channel needs d >= 2");
  if (l < 0) throw InvalidQuantumNumbers("l must be >= 0");
  RadialProblem p = scalar_channel_mu(l + half(d - 3), m, alpha);
  p.d = d;
  p.quantum.l = l;
  return p;
}

SpectrumLine analytic_energy_scalar(int d, int l, int n, const Rational& m, const Rational& alpha) {
  if (d < 2) throw InvalidDimension("scalar radial channel needs d >= 2");
  if (l < 0 || n < 0) throw InvalidQuantumNumbers("l and n must be >= 0");
  require_positive(m, alpha);
  SpectrumLine s;
  s.kind = ChannelKind::scalar;
  s.d = d;
  s.n = n;
  s.l = l;
  s.principal = n + l + half(d - 1);
  s.energy = -m * alpha * alpha / (2 * s.principal * s.principal);
  return s;
}

LadderOp susy_ladder(const Rational& mu, const Rational& m, const Rational& alpha) {
  require_positive(m, alpha);
  if (mu == -1) throw UnsupportedChannel("ladder is degenerate at mu = -1");
  if (mu < -1) throw InvalidQuantumNumbers("ladder needs mu > -1");
  LadderOp a;
  a.kind = ChannelKind::scalar;
  a.param = mu;
  a.w_inv_r(0, 0) = mu + 1;
  a.w_const(0, 0) = -m * alpha / (mu + 1);
  a.c = -m * m * alpha * alpha / ((mu + 1) * (mu + 1));
  return a;
}

RadialExpansion scalar_ladder_state(const Rational& mu, int n, const Rational& m, const Rational& alpha) {
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  const Rational top = mu + n;
  susy_ladder(top, m, alpha);  // validates
  RadialExpansion psi(1, m * alpha / (top + 1));
  psi.add(0, top + 1, RadialBasis::exp, 1);
  for (int k = n - 1; k >= 0; --k) psi = susy_ladder(mu + k, m, alpha).raising().apply(psi);
  return psi;
}

RadialExpansion scalar_closed_form(const Rational& mu, int n, const Rational& m, const Rational& alpha) {
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  if (mu <= -1) throw InvalidQuantumNumbers("closed form needs mu > -1");
  require_positive(m, alpha);
  const Rational b = m * alpha / (n + mu + 1);
  const auto a = kummer_coefficients(n, 2 * mu + 2);
  RadialExpansion f(1, b);
  Rational scale = 1;  // (2b)^k
  for (int k = 0; k <= n; ++k) {
    f.add(0, mu + 1 + k, RadialBasis::exp, a[static_cast<std::size_t>(k)] * scale);
    scale *= 2 * b;
  }
  return f;
}

RadialFunctionSample scalar_eigenfunction(int d, int l, int n, const Rational& m, const Rational& alpha,
                                          const Grid& grid) {
  const RadialProblem p = scalar_channel(d, l, m, alpha);
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  require_positive(m, alpha);
  const double mu = p.quantum.mu.get_d();
  const double b = Rational(m * alpha / (n + p.quantum.mu + 1)).get_d();
  const double bk = 2 * mu + 2;
  auto psi = [&](double r) {
    const double z = b * r;
    return std::pow(z, mu + 1) * std::exp(-z) * kummer_terminating(n, bk, 2 * z);
  };
  const double norm2 = integrate_decaying([&](double r) { return psi(r) * psi(r); }, b, mu + 1 + n);
  std::vector<double> r = grid.nodes();
  std::vector<std::vector<double>> v(1, std::vector<double>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) v[0][i] = psi(r[i]);
  RadialFunctionSample s = finish_sample(std::move(r), std::move(v), norm2);
  check_grid_norm(s, {1.0}, 0);
  return s;
}

// -- spinor --------------------------------------------------------------------------------

RadialProblem spinor_channel(int d, const Rational& j, const Rational& m, const Rational& alpha) {
  if (d < 2) throw InvalidDimension("spinor radial channel needs d >= 2");
  if (!is_half_odd(j)) throw InvalidQuantumNumbers("j must be a positive half-odd integer");
  require_positive(m, alpha);
  const Rational rho = j + half(d - 2);
  RadialProblem p;
  p.d = d;
  p.kind = ChannelKind::spinor;
  p.nchan = 2;
  p.m = m;
  p.alpha = alpha;
  p.quantum.j = j;
  p.quantum.rho = rho;
  p.C = RatMatrix(2);
  p.C(0, 0) = rho * rho + rho;
  p.C(1, 1) = rho * rho - rho;
  p.G = RatMatrix::sigma1(2 * m * alpha);
  p.channel_scale = {1.0, 1.0};
  return p;
}

SpectrumLine analytic_energy_spinor(int d, const Rational& j, int n, const Rational& m, const Rational& alpha) {
  if (d < 2) throw InvalidDimension("spinor radial channel needs d >= 2");
  if (!is_half_odd(j)) throw InvalidQuantumNumbers("j must be a positive half-odd integer");
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  require_positive(m, alpha);
  SpectrumLine s;
  s.kind = ChannelKind::spinor;
  s.d = d;
  s.n = n;
  s.j = j;
  s.principal = j + n + half(d - 1);
  s.energy = -m * alpha * alpha / (2 * s.principal * s.principal);
  return s;
}

LadderOp spinor_ladder(const Rational& rho, const Rational& m, const Rational& alpha) {
  require_positive(m, alpha);
  if (rho <= Rational(-1, 2)) throw InvalidQuantumNumbers("spinor ladder needs rho > -1/2");
  const Rational omega = 2 * m * alpha;
  const Rational t = 2 * rho + 1;
  LadderOp a;
  a.kind = ChannelKind::spinor;
  a.param = rho;
  a.w_inv_r = RatMatrix::sigma3(Rational(1, 2)) + RatMatrix::identity(2, t / 2);
  a.w_const = RatMatrix::sigma1(omega / t);
  a.c = -omega * omega / (t * t);
  return a;
}

RadialExpansion spinor_ground_expansion(const Rational& rho, const Rational& m, const Rational& alpha) {
  require_positive(m, alpha);
  if (rho <= Rational(-1, 2)) throw InvalidQuantumNumbers("spinor ground state needs rho > -1/2");
  RadialExpansion f(2, 2 * m * alpha / (2 * rho + 1));
  f.add(0, rho + 1, RadialBasis::bessel_k0, 1);
  f.add(1, rho + 1, RadialBasis::bessel_k1, -1);
  return f;
}

RadialExpansion spinor_ladder_state(const Rational& rho, int n, const Rational& m, const Rational& alpha) {
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  RadialExpansion psi = spinor_ground_expansion(rho + n, m, alpha);
  for (int k = n - 1; k >= 0; --k) psi = spinor_ladder(rho + k, m, alpha).raising().apply(psi);
  return psi;
}

RadialFunctionSample spinor_excited_states(int d, const Rational& j, int n, const Rational& m,
                                           const Rational& alpha, const Grid& grid) {
  const RadialProblem p = spinor_channel(d, j, m, alpha);
  const RadialExpansion f = spinor_ladder_state(p.quantum.rho, n, m, alpha);
  RadialFunctionSample s = sample_expansion(f, grid);
  check_grid_norm(s, {1.0, 1.0}, 0);
  return s;
}

RadialFunctionSample spinor_ground_state(int d, const Rational& j, const Rational& m, const Rational& alpha,
                                         const Grid& grid) {
  return spinor_excited_states(d, j, 0, m, alpha, grid);
}

Rational casimir_relation_spinor(int d, const Rational& j, int n) {
  if (d < 2) throw InvalidDimension("spinor channel needs d >= 2");
  if (!is_half_odd(j) || n < 0) throw InvalidQuantumNumbers("need half-odd j > 0 and n >= 0");
  const Rational jh = j + n;
  return jh * (jh + d - 1) + frac((d - 1) * (d - 2), 8);
}

// -- spin 1 --------------------------------------------------------------------------------

RadialProblem vector_channel(int d, int l, const Rational& m, const Rational& alpha) {
  if (d < 3) throw UnsupportedChannel("coupled vector channel needs d >= 3");
  if (l < 1) throw UnsupportedChannel("coupled vector channel needs l >= 1 (l = 0 has no second basis vector)");
  require_positive(m, alpha);
  const int L = l * (l + d - 2);
  const Rational c = frac((d - 1) * (d - 3), 4);
  RadialProblem p;
  p.d = d;
  p.kind = ChannelKind::vector_coupled;
  p.nchan = 2;
  p.m = m;
  p.alpha = alpha;
  p.quantum.l = l;
  p.quantum.mu = l + half(d - 3);
  p.C = RatMatrix(2);
  p.C(0, 0) = L + d - 1 + c;
  p.C(0, 1) = -2 * L;
  p.C(1, 0) = -2;
  p.C(1, 1) = L - d + 3 + c;
  p.G = RatMatrix(2);
  p.G(0, 0) = -m * alpha * (d - 1);
  p.G(1, 1) = -m * alpha * (d - 3);
  p.channel_scale = {1.0, std::sqrt(static_cast<double>(L))};
  return p;
}

RadialOperator vector_native_operator(const RadialProblem& p) {
  if (p.kind != ChannelKind::vector_coupled) throw std::invalid_argument("not a coupled vector channel");
  const int d = p.d;
  const int l = p.quantum.l;
  const int L = l * (l + d - 2);
  RatMatrix K(2);
  K(0, 0) = L + d - 1;
  K(0, 1) = -2 * L;
  K(1, 0) = -2;
  K(1, 1) = L - d + 3;
  RatMatrix V(2);
  V(0, 0) = -p.m * p.alpha * (d - 1);
  V(1, 1) = -p.m * p.alpha * (d - 3);
  RadialOperator op(2);
  op.add_term(2, 0, RatMatrix::identity(2, -1));
  op.add_term(1, -1, RatMatrix::identity(2, -(d - 1)));
  op.add_term(0, -2, K);
  op.add_term(0, -1, V);
  return op;
}

RadialProblem vector_reduced_channel(const RadialProblem& p) {
  if (p.kind != ChannelKind::vector_coupled) throw std::invalid_argument("not a coupled vector channel");
  RadialProblem s = scalar_channel(p.d, p.quantum.l, p.m, p.alpha * (p.d - 1) / 2);
  return s;
}

SpectrumLine analytic_energy_vector(int d, int l, int n, const Rational& m, const Rational& alpha) {
  if (d < 3) throw UnsupportedChannel("coupled vector channel needs d >= 3");
  if (l < 1) throw UnsupportedChannel("coupled vector channel needs l >= 1");
  if (n < 0) throw InvalidQuantumNumbers("n must be >= 0");
  require_positive(m, alpha);
  SpectrumLine s;
  s.kind = ChannelKind::vector_coupled;
  s.d = d;
  s.n = n;
  s.l = l;
  s.principal = frac(2 * n + 2 * l + d - 1, d - 1);
  s.energy = -m * alpha * alpha / (2 * s.principal * s.principal);
  return s;
}

RadialExpansion vector_closed_form(int d, int l, int n, const Rational& m, const Rational& alpha) {
  const SpectrumLine line = analytic_energy_vector(d, l, n, m, alpha);
  const Rational& k = line.principal;
  const Rational b = m * alpha / k;
  const Rational bb = 2 * l + d - 1;
  const auto f0 = kummer_coefficients(n, bb);
  const auto f1 = n > 0 ? kummer_coefficients(n - 1, bb + 1) : std::vector<Rational>{};
  // coefficients in powers rho^{l-1+q}, rho = b r
  std::vector<Rational> phi1(static_cast<std::size_t>(n + 2), Rational(0));
  std::vector<Rational> phi2(static_cast<std::size_t>(n + 2), Rational(0));
  Rational two_q = 1;
  for (int q = 0; q <= n; ++q) {
    const Rational a = f0[static_cast<std::size_t>(q)] * two_q;
    phi2[static_cast<std::size_t>(q)] += a;
    phi1[static_cast<std::size_t>(q)] += l * a;
    phi1[static_cast<std::size_t>(q + 1)] += (k - 1) * a;
    two_q *= 2;
  }
  two_q = 1;
  for (int q = 0; q < n; ++q) {
    phi1[static_cast<std::size_t>(q + 1)] -= Rational(2 * n) / bb * f1[static_cast<std::size_t>(q)] * two_q;
    two_q *= 2;
  }
  RadialExpansion f(2, b);
  Rational bq = 1;
  for (int q = 0; q < l - 1; ++q) bq *= b;  // b^{l-1}
  for (int q = 0; q <= n + 1; ++q) {
    f.add(0, Rational(l - 1 + q), RadialBasis::exp, phi1[static_cast<std::size_t>(q)] * bq);
    f.add(1, Rational(l - 1 + q), RadialBasis::exp, phi2[static_cast<std::size_t>(q)] * bq);
    bq *= b;
  }
  return f;
}

RadialFunctionSample vector_eigenfunctions(int d, int l, int n, const Rational& m, const Rational& alpha,
                                           const Grid& grid) {
  const SpectrumLine line = analytic_energy_vector(d, l, n, m, alpha);
  const double k = line.principal.get_d();
  const double b = Rational(m * alpha).get_d() / k;
  const double bb = 2 * l + d - 1;
  const double L = l * (l + d - 2);
  auto phi = [&](double r) {
    const double rho = b * r;
    const double pre = std::pow(rho, l - 1) * std::exp(-rho);
    const double F0 = kummer_terminating(n, bb, 2 * rho);
    const double F1 = n > 0 ? kummer_terminating(n - 1, bb + 1, 2 * rho) : 0.0;
    return std::array<double, 2>{pre * ((l + (k - 1) * rho) * F0 - 2 * n * rho / bb * F1), pre * F0};
  };
  const double norm2 = integrate_decaying(
      [&](double r) {
        const auto v = phi(r);
        return std::pow(r, d - 1) * (v[0] * v[0] + L * v[1] * v[1]);
      },
      b, l + n + (d - 1) / 2.0);
  std::vector<double> r = grid.nodes();
  std::vector<std::vector<double>> v(2, std::vector<double>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto p = phi(r[i]);
    v[0][i] = p[0];
    v[1][i] = p[1];
  }
  RadialFunctionSample s = finish_sample(std::move(r), std::move(v), norm2);
  check_grid_norm(s, {1.0, L}, d - 1);
  return s;
}

Rational vector_epsilon(int d, const Rational& energy, const Rational& omega, const Rational& m,
                        const Rational& alpha) {
  if (d < 3) throw UnsupportedChannel("constrained vector system needs d >= 3");
  const int a = (d - 3) * (d - 3);
  return (2 * m * energy * (a + 4 * omega) + m * m * alpha * alpha * a) / (4 * (d - 2));
}

Rational vector_casimir_omega(int d, int lprime) {
  if (lprime < 0) throw InvalidQuantumNumbers("l' must be >= 0");
  return Rational(lprime * (lprime + d - 1));
}

RadialOperator vector_constraint_operator(const RadialProblem& p, const Rational& energy, const Rational& epsilon) {
  if (p.kind != ChannelKind::vector_coupled) throw std::invalid_argument("not a coupled vector channel");
  const int d = p.d;
  const int l = p.quantum.l;
  const Rational L = l * (l + d - 2);
  const Rational ma = p.m * p.alpha;
  const Rational cc = 2 * p.m * energy + epsilon + ma * ma;
  auto entry = [](int i, int j, const Rational& v) {
    RatMatrix e(2);
    e(i, j) = v;
    return e;
  };
  RadialOperator op(2);
  // L (phi1 - (r phi2)' - m a r phi2) - r^2 cc phi1
  op.add_term(0, 0, entry(0, 0, L));
  op.add_term(0, 2, entry(0, 0, -cc));
  op.add_term(1, 1, entry(0, 1, -L));
  op.add_term(0, 0, entry(0, 1, -L));
  op.add_term(0, 1, entry(0, 1, -L * ma));
  // (d-2) phi1 + (r phi1)' - L phi2 - m a r phi1 - r^2 eps phi2
  op.add_term(0, 0, entry(1, 0, Rational(d - 1)));
  op.add_term(1, 1, entry(1, 0, 1));
  op.add_term(0, 1, entry(1, 0, -ma));
  op.add_term(0, 0, entry(1, 1, -L));
  op.add_term(0, 2, entry(1, 1, -epsilon));
  return op;
}

VectorConstraintResidual vector_constraint_residual(int d, int l, int n, const Rational& m, const Rational& alpha,
                                                    const Grid& grid, const std::optional<Rational>& energy) {
  const RadialProblem p = vector_channel(d, l, m, alpha);
  VectorConstraintResidual res;
  res.energy = energy ? *energy : analytic_energy_vector(d, l, n, m, alpha).energy;
  res.epsilon = vector_epsilon(d, res.energy, vector_casimir_omega(d, l + n), m, alpha);
  res.cc = 2 * m * res.energy + res.epsilon + m * m * alpha * alpha;
  const RadialExpansion f = vector_closed_form(d, l, n, m, alpha);
  const auto ac = operator_residual(vector_constraint_operator(p, res.energy, res.epsilon), f, 0.0, grid);
  res.ac1 = ac[0];
  res.ac2 = ac[1];
  const auto ode = operator_residual(vector_native_operator(p), f, Rational(2 * m * res.energy).get_d(), grid);
  res.ode = std::max(ode[0], ode[1]);
  return res;
}

Rational casimir_energy(CasimirMap which, int d, const Rational& omega, const Rational& m, const Rational& alpha) {
  require_positive(m, alpha);
  const int a = which == CasimirMap::E1 ? (d - 1) * (d - 1) : (d - 3) * (d - 3);
  const Rational den = 2 * a + 8 * omega;
  if (sgn(den) == 0) throw std::domain_error("energy map is singular at this omega");
  return -m * alpha * alpha * a / den;
}

Rational casimir_energy_e3(int d, int l, int n, const Rational& m, const Rational& alpha) {
  if (l < 0 || n < 0) throw InvalidQuantumNumbers("l and n must be >= 0");
  require_positive(m, alpha);
  const int q = 2 * l + 2 * n + d - 1;
  return -m * alpha * alpha * (d - 3) * (d - 3) / (2 * q * q);
}

Rational transverse_casimir_omega(int d, int l, int n) {
  if (l < 0 || n < 0) throw InvalidQuantumNumbers("l and n must be >= 0");
  const int lt = l + n + 1;
  return Rational(lt * (lt + d - 3));
}

RadialProblem phi3_channel(int d, int l, const Rational& m, const Rational& alpha) {
  if (d < 3) throw UnsupportedChannel("transverse vector channel needs d >= 3");
  if (l < 0) throw InvalidQuantumNumbers("l must be >= 0");
  RadialProblem p = scalar_channel_mu(l + half(d - 3), m, alpha);
  p.d = d;
  p.kind = ChannelKind::vector_transverse;
  p.quantum.l = l;
  p.G(0, 0) = m * (d - 3) * alpha;
  return p;
}

// -- utilities -----------------------------------------------------------------------------

double length_scale(const RadialProblem& p, int levels) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  const double ma = Rational(p.m * p.alpha).get_d();
  switch (p.kind) {
    case ChannelKind::scalar: {
      const double N = p.quantum.mu.get_d() + levels;
      const double coupling = -p.G(0, 0).get_d() / 2;
      return N / (coupling > 0 ? coupling : ma);
    }
    case ChannelKind::spinor: return (p.quantum.rho.get_d() + 0.5 + levels - 1) / ma;
    case ChannelKind::vector_coupled:
      return analytic_energy_vector(p.d, p.quantum.l, levels - 1, p.m, p.alpha).principal.get_d() / ma;
    case ChannelKind::vector_transverse: return (p.quantum.mu.get_d() + levels) / ma;
  }
  return 1;
}

std::vector<double> operator_residual(const RadialOperator& op, const RadialExpansion& f, double eps,
                                      const Grid& grid) {
  const int n = op.nchan();
  if (f.nchan() != n) throw std::invalid_argument("channel count mismatch");
  int max_order = 0;
  for (const auto& [k, m] : op.terms()) max_order = std::max(max_order, k.first);
  std::vector<RadialExpansion> derivs{f};
  for (int o = 1; o <= max_order; ++o) derivs.push_back(derivs.back().derivative());
  std::vector<double> worst(static_cast<std::size_t>(n), 0.0);
  for (const double r : grid.nodes()) {
    std::vector<std::vector<double>> dv;
    for (const auto& g : derivs) dv.push_back(g.evaluate(r));
    for (int i = 0; i < n; ++i) {
      double sum = -eps * dv[0][static_cast<std::size_t>(i)];
      double mag = std::abs(sum);
      for (const auto& [k, m] : op.terms()) {
        const double rq = std::pow(r, k.second);
        for (int j = 0; j < n; ++j) {
          if (sgn(m(i, j)) == 0) continue;
          const double t = m(i, j).get_d() * rq * dv[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(j)];
          sum += t;
          mag += std::abs(t);
        }
      }
      if (mag > 1e-250) worst[static_cast<std::size_t>(i)] = std::max(worst[static_cast<std::size_t>(i)], std::abs(sum) / mag);
    }
  }
  return worst;
}

double ode_residual(const RadialProblem& p, const RadialExpansion& f, double eps, const Grid& grid) {
  const auto r = operator_residual(p.hamiltonian(), f, eps, grid);
  return *std::max_element(r.begin(), r.end());
}

RadialFunctionSample sample_expansion(const RadialExpansion& f, const Grid& grid,
                                      const std::vector<double>& channel_weight, int weight_rpow) {
  std::vector<double> w = channel_weight;
  if (w.empty()) w.assign(static_cast<std::size_t>(f.nchan()), 1.0);
  if (static_cast<int>(w.size()) != f.nchan()) throw std::invalid_argument("one weight per channel");
  const double norm2 = integrate_decaying(
      [&](double r) {
        const auto v = f.evaluate(r);
        double s = 0;
        for (std::size_t c = 0; c < v.size(); ++c) s += w[c] * v[c] * v[c];
        return s * std::pow(r, weight_rpow);
      },
      f.decay().get_d(), max_power(f) + weight_rpow / 2.0);
  std::vector<double> r = grid.nodes();
  std::vector<std::vector<double>> v(static_cast<std::size_t>(f.nchan()), std::vector<double>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto fi = f.evaluate(r[i]);
    for (std::size_t c = 0; c < fi.size(); ++c) v[c][i] = fi[c];
  }
  return finish_sample(std::move(r), std::move(v), norm2);
}

int node_count(const std::vector<double>& v) {
  double vmax = 0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double thr = 1e-12 * vmax;
  int count = 0, last = 0;
  for (double x : v) {
    if (std::abs(x) < thr || x == 0) continue;
    const int s = x > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int node_count(const RadialFunctionSample& s) {
  std::size_t best = 0;
  double best_max = -1;
  for (std::size_t c = 0; c < s.values.size(); ++c) {
    double mx = 0;
    for (double x : s.values[c]) mx = std::max(mx, std::abs(x));
    if (mx > best_max) {
      best_max = mx;
      best = c;
    }
  }
  return s.values.empty() ? 0 : node_count(s.values[best]);
}

std::vector<double> hyperspherical_to_cartesian(double r, const std::vector<double>& angles) {
  if (angles.empty()) throw InvalidDimension("need d >= 2 (at least one angle)");
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  const std::size_t d = angles.size() + 1;
  std::vector<double> x(d);
  double s = r;  // r sin t_{d-1} ... sin t_{k}
  for (std::size_t k = d; k >= 2; --k) {
    // x_k = s cos t_{k-1} (1-based), then s *= sin t_{k-1}
    x[k - 1] = s * std::cos(angles[k - 2]);
    s *= std::sin(angles[k - 2]);
  }
  x[0] = s;
  return x;
}

}  // namespace lrl
