#include "lrl/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace lrl {

int Monomial::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

Monomial Monomial::operator+(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
  return m;
}

std::size_t TermKeyHash::operator()(const TermKey& k) const noexcept {
  std::uint64_t h = 0;
  for (auto v : k.mono.e) h = (h << 8) | v;
  h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(k.rpow)) * 0x9E3779B97F4A7C15ULL;
  h ^= h >> 29;
  return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
}

WaveFunction::WaveFunction(int d, int ncomp, Rational beta)
    : d_(d), ncomp_(ncomp), beta_(std::move(beta)), comps_(static_cast<std::size_t>(ncomp)) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension outside 1.." + std::to_string(kMaxDim));
  if (ncomp < 1) throw std::invalid_argument("need at least one component");
  if (sgn(beta_) < 0) throw std::invalid_argument("beta must be non-negative");
}

std::size_t WaveFunction::term_count() const {
  std::size_t n = 0;
  for (const auto& c : comps_) n += c.size();
  return n;
}

void WaveFunction::add(int a, const Monomial& mono, int rpow, const GaussRational& c) {
  if (c.is_zero()) return;
  auto& v = comps_.at(static_cast<std::size_t>(a));
  const TermKey key{mono, rpow};
  auto it = std::lower_bound(v.begin(), v.end(), key,
                             [](const Term& t, const TermKey& k) { return TermKey{t.mono, t.rpow} < k; });
  if (it != v.end() && it->mono == mono && it->rpow == rpow) {
    it->coeff += c;
    if (it->coeff.is_zero()) v.erase(it);
  } else {
    v.insert(it, Term{mono, rpow, c});
  }
}

WaveFunction WaveFunction::derivative(int nu) const {
  if (nu < 0 || nu >= d_) throw std::out_of_range("derivative index");
  TermAccumulator acc(d_, ncomp_, beta_);
  const Monomial e = Monomial::unit(nu);
  const GaussRational mbeta(Rational(-beta_));
  for (int a = 0; a < ncomp_; ++a) {
    for (const auto& t : component(a)) {
      if (t.mono[nu] > 0) {
        Monomial m = t.mono;
        m[nu] -= 1;
        acc.add(a, m, t.rpow, GaussRational(t.mono[nu]) * t.coeff);
      }
      if (t.rpow != 0) acc.add(a, t.mono + e, t.rpow - 2, GaussRational(t.rpow) * t.coeff);
      if (sgn(beta_) != 0) acc.add(a, t.mono + e, t.rpow - 1, mbeta * t.coeff);
    }
  }
  return acc.finish();
}

void WaveFunction::check_compatible(const WaveFunction& o) const {
  if (d_ != o.d_ || ncomp_ != o.ncomp_ || beta_ != o.beta_)
    throw DimensionMismatch("incompatible wave functions");
}

WaveFunction& WaveFunction::operator+=(const WaveFunction& o) {
  check_compatible(o);
  TermAccumulator acc(d_, ncomp_, beta_);
  acc.add(*this);
  acc.add(o);
  return *this = acc.finish();
}

WaveFunction& WaveFunction::operator-=(const WaveFunction& o) {
  check_compatible(o);
  TermAccumulator acc(d_, ncomp_, beta_);
  acc.add(*this);
  acc.add(o, GaussRational(-1));
  return *this = acc.finish();
}

WaveFunction& WaveFunction::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    for (auto& v : comps_) v.clear();
    return *this;
  }
  for (auto& v : comps_)
    for (auto& t : v) t.coeff *= c;
  return *this;
}

int WaveFunction::max_weight() const {
  int w = 0;
  bool any = false;
  for (const auto& v : comps_)
    for (const auto& t : v) {
      w = any ? std::max(w, t.mono.degree() + t.rpow) : t.mono.degree() + t.rpow;
      any = true;
    }
  return w;
}

int WaveFunction::min_rpow() const {
  int m = 0;
  for (const auto& v : comps_)
    for (const auto& t : v) m = std::min(m, t.rpow);
  return m;
}

WaveFunction operator+(WaveFunction a, const WaveFunction& b) { return a += b; }
WaveFunction operator-(WaveFunction a, const WaveFunction& b) { return a -= b; }
WaveFunction operator*(const GaussRational& c, WaveFunction f) { return f *= c; }

TermAccumulator::TermAccumulator(int d, int ncomp, Rational beta)
    : d_(d), ncomp_(ncomp), beta_(std::move(beta)), maps_(static_cast<std::size_t>(ncomp)) {}

void TermAccumulator::add(int a, const Monomial& mono, int rpow, const GaussRational& c) {
  if (c.is_zero()) return;
  auto& m = maps_.at(static_cast<std::size_t>(a));
  auto [it, inserted] = m.try_emplace(TermKey{mono, rpow}, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add(const WaveFunction& f, const GaussRational& scale) {
  const bool unit = scale == GaussRational(1);
  for (int a = 0; a < f.ncomp(); ++a)
    for (const auto& t : f.component(a)) add(a, t.mono, t.rpow, unit ? t.coeff : t.coeff * scale);
}

WaveFunction TermAccumulator::finish() {
  WaveFunction f(d_, ncomp_, beta_);
  for (int a = 0; a < ncomp_; ++a) {
    auto& v = f.comps_[static_cast<std::size_t>(a)];
    for (auto& [k, c] : maps_[static_cast<std::size_t>(a)])
      if (!c.is_zero()) v.push_back(Term{k.mono, k.rpow, std::move(c)});
    std::sort(v.begin(), v.end(),
              [](const Term& x, const Term& y) { return TermKey{x.mono, x.rpow} < TermKey{y.mono, y.rpow}; });
    maps_[static_cast<std::size_t>(a)].clear();
  }
  return f;
}

namespace {

Rational rational_pow(const Rational& base, int n) {
  Rational r = 1;
  Rational b = n < 0 ? Rational(1 / base) : base;
  for (unsigned k = static_cast<unsigned>(std::abs(n)); k > 0; k >>= 1) {
    if (k & 1U) r *= b;
    b *= b;
  }
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(sn, sd);
}

int floor_half(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

}  // namespace

std::vector<ParityPair> evaluate(const WaveFunction& f, const RationalPoint& x) {
  if (static_cast<int>(x.size()) != f.d()) throw DimensionMismatch("point has wrong dimension");
  Rational r2 = 0;
  for (const auto& c : x) r2 += c * c;
  if (sgn(r2) == 0) throw SingularPoint("evaluation at the origin");

  int maxe = 0, jmin = 0, jmax = 0;
  for (int a = 0; a < f.ncomp(); ++a)
    for (const auto& t : f.component(a)) {
      for (int nu = 0; nu < f.d(); ++nu) maxe = std::max<int>(maxe, t.mono[nu]);
      jmin = std::min(jmin, floor_half(t.rpow));
      jmax = std::max(jmax, floor_half(t.rpow));
    }
  std::vector<std::vector<Rational>> xp(static_cast<std::size_t>(f.d()));
  for (int nu = 0; nu < f.d(); ++nu) {
    auto& p = xp[static_cast<std::size_t>(nu)];
    p.resize(static_cast<std::size_t>(maxe) + 1);
    p[0] = 1;
    for (int k = 1; k <= maxe; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * x[static_cast<std::size_t>(nu)];
  }
  std::vector<Rational> r2p(static_cast<std::size_t>(jmax - jmin + 1));
  for (int j = jmin; j <= jmax; ++j) r2p[static_cast<std::size_t>(j - jmin)] = rational_pow(r2, j);

  std::vector<ParityPair> out(static_cast<std::size_t>(f.ncomp()));
  for (int a = 0; a < f.ncomp(); ++a) {
    auto& pp = out[static_cast<std::size_t>(a)];
    for (const auto& t : f.component(a)) {
      Rational v = r2p[static_cast<std::size_t>(floor_half(t.rpow) - jmin)];
      for (int nu = 0; nu < f.d(); ++nu)
        if (t.mono[nu] != 0) v *= xp[static_cast<std::size_t>(nu)][t.mono[nu]];
      GaussRational term = t.coeff * GaussRational(v);
      if (t.rpow % 2 == 0)
        pp.even += term;
      else
        pp.odd += term;
    }
  }
  if (auto r = exact_sqrt(r2)) {
    for (auto& pp : out) {
      pp.even += pp.odd * GaussRational(*r);
      pp.odd = GaussRational(0);
    }
  }
  return out;
}

std::vector<std::complex<double>> evaluate_numeric(const WaveFunction& f, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != f.d()) throw DimensionMismatch("point has wrong dimension");
  double r2 = 0;
  for (double c : x) r2 += c * c;
  if (r2 == 0) throw SingularPoint("evaluation at the origin");
  const double r = std::sqrt(r2);
  const double ex = std::exp(-f.beta().get_d() * r);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(f.ncomp()));
  for (int a = 0; a < f.ncomp(); ++a) {
    std::complex<double> s = 0;
    for (const auto& t : f.component(a)) {
      double v = std::pow(r, t.rpow);
      for (int nu = 0; nu < f.d(); ++nu) v *= std::pow(x[static_cast<std::size_t>(nu)], t.mono[nu]);
      s += std::complex<double>(t.coeff.re.get_d(), t.coeff.im.get_d()) * v;
    }
    out[static_cast<std::size_t>(a)] = s * ex;
  }
  return out;
}

WaveFunction random_test_function(int d, int ncomp, int max_degree, const Rational& beta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  WaveFunction f(d, ncomp, beta);
  for (int a = 0; a < ncomp; ++a) {
    const int nterms = pick(1, 3);
    while (static_cast<int>(f.component(a).size()) < nterms) {
      Monomial m;
      const int deg = pick(0, max_degree);
      for (int k = 0; k < deg; ++k) m[pick(0, d - 1)] += 1;
      const int rpow = pick(-1, 1);
      int re = pick(-4, 4), im = pick(-2, 2);
      if (re == 0 && im == 0) re = 1;
      f.add(a, m, rpow, GaussRational(Rational(re), Rational(im)));
    }
  }
  return f;
}

namespace {

std::vector<Rational> coordinate_values(int radius) {
  std::set<Rational> s;
  for (int q = 1; q <= 3; ++q)
    for (int p = -radius; p <= radius; ++p) {
      Rational v(p, q);
      v.canonicalize();
      s.insert(v);
    }
  return {s.begin(), s.end()};
}

}  // namespace

int sample_set_size(int radius) { return static_cast<int>(coordinate_values(radius).size()); }

std::vector<RationalPoint> sample_points(int d, int npoints, int radius, std::uint64_t seed) {
  const auto vals = coordinate_values(radius);
  std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
  std::vector<RationalPoint> pts;
  while (static_cast<int>(pts.size()) < npoints) {
    RationalPoint x(static_cast<std::size_t>(d));
    bool nonzero = false;
    for (auto& c : x) {
      c = vals[rng() % vals.size()];
      nonzero = nonzero || sgn(c) != 0;
    }
    if (nonzero) pts.push_back(std::move(x));
  }
  return pts;
}

ZeroTest zero_test(const WaveFunction& f, int npoints, std::uint64_t seed) {
  ZeroTest z;
  if (f.empty()) return z;
  // Clearing r^{-2J} leaves polynomial numerators of degree <= max_weight - min_rpow + 1;
  // E^2 - O^2 r^2 doubles it and vanishes wherever E + O r does.
  z.degree_bound = 2 * (f.max_weight() - f.min_rpow() + 1);
  z.radius = 9;
  while (8 * z.degree_bound > sample_set_size(z.radius)) z.radius *= 2;
  const double s = sample_set_size(z.radius);
  const double per_point = (z.degree_bound / s) / (1.0 - std::pow(s, -f.d()));
  z.false_zero_bound = std::pow(per_point, npoints);
  for (auto& x : sample_points(f.d(), npoints, z.radius, seed)) {
    for (const auto& pp : evaluate(f, x))
      if (!pp.is_zero()) {
        z.zero = false;
        z.witness = std::move(x);
        z.false_zero_bound = 0.0;
        return z;
      }
  }
  return z;
}

}  // namespace lrl
