#include "lrl/radial_ops.hpp"

#include "lrl/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace lrl {

RatMatrix RatMatrix::identity(int size, const Rational& c) {
  RatMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = c;
  return m;
}

RatMatrix RatMatrix::sigma1(const Rational& c) {
  RatMatrix m(2);
  m(0, 1) = c;
  m(1, 0) = c;
  return m;
}

RatMatrix RatMatrix::sigma3(const Rational& c) {
  RatMatrix m(2);
  m(0, 0) = c;
  m(1, 1) = -c;
  return m;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : a)
    if (sgn(v) != 0) return false;
  return true;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (o.n != n) throw std::invalid_argument("matrix size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& c) {
  for (auto& v : a) v *= c;
  return *this;
}

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
  RatMatrix m(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (int j = 0; j < x.n; ++j)
        if (sgn(y(k, j)) != 0) m(i, j) += x(i, k) * y(k, j);
    }
  return m;
}

RadialExpansion::RadialExpansion(int nchan, Rational decay) : b_(std::move(decay)), comps_(static_cast<std::size_t>(nchan)) {
  if (nchan < 1) throw std::invalid_argument("need at least one channel");
  if (sgn(b_) <= 0) throw std::invalid_argument("decay must be positive");
}

void RadialExpansion::add(int i, const Rational& power, RadialBasis basis, const Rational& c) {
  if (sgn(c) == 0) return;
  auto& m = comps_.at(static_cast<std::size_t>(i));
  auto [it, inserted] = m.try_emplace(Key{power, basis}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
  }
}

RadialExpansion RadialExpansion::derivative() const {
  RadialExpansion out(nchan(), b_);
  for (int i = 0; i < nchan(); ++i)
    for (const auto& [k, c] : component(i)) {
      const auto& [p, basis] = k;
      switch (basis) {
        case RadialBasis::exp:
          out.add(i, p - 1, basis, c * p);
          out.add(i, p, basis, -c * b_);
          break;
        case RadialBasis::bessel_k0:  // K0' = -K1
          out.add(i, p - 1, basis, c * p);
          out.add(i, p, RadialBasis::bessel_k1, -c * b_);
          break;
        case RadialBasis::bessel_k1:  // K1'(y) = -K0(y) - K1(y)/y
          out.add(i, p - 1, basis, c * (p - 1));
          out.add(i, p, RadialBasis::bessel_k0, -c * b_);
          break;
      }
    }
  return out;
}

bool RadialExpansion::is_zero() const {
  for (const auto& m : comps_)
    if (!m.empty()) return false;
  return true;
}

void RadialExpansion::check_compatible(const RadialExpansion& o) const {
  if (o.nchan() != nchan() || o.b_ != b_) throw std::invalid_argument("incompatible radial expansions");
}

RadialExpansion& RadialExpansion::operator+=(const RadialExpansion& o) {
  check_compatible(o);
  for (int i = 0; i < nchan(); ++i)
    for (const auto& [k, c] : o.component(i)) add(i, k.first, k.second, c);
  return *this;
}

RadialExpansion& RadialExpansion::operator-=(const RadialExpansion& o) {
  check_compatible(o);
  for (int i = 0; i < nchan(); ++i)
    for (const auto& [k, c] : o.component(i)) add(i, k.first, k.second, -c);
  return *this;
}

RadialExpansion& RadialExpansion::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    for (auto& m : comps_) m.clear();
    return *this;
  }
  for (auto& m : comps_)
    for (auto& [k, v] : m) v *= c;
  return *this;
}

std::vector<double> RadialExpansion::evaluate(double r) const {
  if (!(r > 0)) throw std::domain_error("radial functions are evaluated at r > 0");
  const double y = b_.get_d() * r;
  const double e = std::exp(-y);
  double k0 = 0, k1 = 0;
  bool have_k = false;
  std::vector<double> out(comps_.size(), 0.0);
  for (std::size_t i = 0; i < comps_.size(); ++i)
    for (const auto& [k, c] : comps_[i]) {
      double basis = e;
      if (k.second != RadialBasis::exp) {
        if (!have_k) {
          k0 = bessel_k(0, y);
          k1 = bessel_k(1, y);
          have_k = true;
        }
        basis = k.second == RadialBasis::bessel_k0 ? k0 : k1;
      }
      out[i] += c.get_d() * std::pow(r, k.first.get_d()) * basis;
    }
  return out;
}

RadialOperator::RadialOperator(int nchan) : n_(nchan) {
  if (nchan < 1) throw std::invalid_argument("need at least one channel");
}

RadialOperator RadialOperator::identity(int nchan) {
  RadialOperator op(nchan);
  op.add_term(0, 0, RatMatrix::identity(nchan));
  return op;
}

RadialOperator RadialOperator::derivative(int nchan) {
  RadialOperator op(nchan);
  op.add_term(1, 0, RatMatrix::identity(nchan));
  return op;
}

RadialOperator RadialOperator::multiply(const RatMatrix& m, int q) {
  RadialOperator op(m.n);
  op.add_term(0, q, m);
  return op;
}

void RadialOperator::add_term(int order, int q, const RatMatrix& m) {
  if (m.n != n_) throw std::invalid_argument("coefficient size mismatch");
  if (order < 0) throw std::invalid_argument("negative derivative order");
  if (m.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{order, q}, m);
  if (!inserted) {
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RadialOperator& RadialOperator::operator+=(const RadialOperator& o) {
  for (const auto& [k, m] : o.terms_) add_term(k.first, k.second, m);
  return *this;
}

RadialOperator& RadialOperator::operator-=(const RadialOperator& o) {
  for (const auto& [k, m] : o.terms_) add_term(k.first, k.second, Rational(-1) * m);
  return *this;
}

RadialOperator& RadialOperator::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, m] : terms_) m *= c;
  return *this;
}

RadialOperator operator+(RadialOperator a, const RadialOperator& b) { return a += b; }
RadialOperator operator-(RadialOperator a, const RadialOperator& b) { return a -= b; }
RadialOperator operator*(const Rational& c, RadialOperator a) { return a *= c; }

namespace {

Rational falling(const Rational& q, int j) {
  Rational r = 1;
  for (int i = 0; i < j; ++i) r *= q - i;
  return r;
}

Rational binom(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

RadialOperator operator*(const RadialOperator& a, const RadialOperator& b) {
  if (a.nchan() != b.nchan()) throw std::invalid_argument("channel count mismatch");
  RadialOperator out(a.nchan());
  // (M r^q D^k)(N r^s D^l) = sum_j C(k,j) M N (d^j r^s) r^q D^{k-j+l}
  for (const auto& [ka, ma] : a.terms())
    for (const auto& [kb, mb] : b.terms()) {
      const RatMatrix mn = ma * mb;
      if (mn.is_zero()) continue;
      const auto [k, q] = ka;
      const auto [l, s] = kb;
      for (int j = 0; j <= k; ++j) {
        const Rational c = binom(k, j) * falling(Rational(s), j);
        if (sgn(c) == 0) continue;
        out.add_term(k - j + l, q + s - j, c * mn);
      }
    }
  return out;
}

RadialOperator RadialOperator::conjugated(const Rational& s) const {
  // D^k r^s = sum_j C(k,j) s(s-1)..(s-j+1) r^{s-j} D^{k-j}
  RadialOperator out(n_);
  for (const auto& [key, m] : terms_) {
    const auto [k, q] = key;
    for (int j = 0; j <= k; ++j) {
      const Rational c = binom(k, j) * falling(s, j);
      if (sgn(c) != 0) out.add_term(k - j, q - j, c * m);
    }
  }
  return out;
}

RadialExpansion RadialOperator::apply(const RadialExpansion& f) const {
  if (f.nchan() != n_) throw std::invalid_argument("channel count mismatch");
  RadialExpansion out(n_, f.decay());
  std::map<int, RadialExpansion> derivs;
  derivs.emplace(0, f);
  for (const auto& [key, m] : terms_) {
    const auto [order, q] = key;
    for (int o = 1; o <= order; ++o)
      if (!derivs.count(o)) derivs.emplace(o, derivs.at(o - 1).derivative());
    const RadialExpansion& g = derivs.at(order);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (sgn(m(i, j)) == 0) continue;
        for (const auto& [k, c] : g.component(j)) out.add(i, k.first + q, k.second, m(i, j) * c);
      }
  }
  return out;
}

}  // namespace lrl
