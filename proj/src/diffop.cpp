#include "lrl/diffop.hpp"

#include <algorithm>

namespace lrl {

namespace {

ExactMatrix zero_matrix(int n) { return ExactMatrix::Constant(n, n, GaussRational(0)); }

ExactMatrix scaled_identity(int n, const GaussRational& c) {
  ExactMatrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Monomial subtract(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  return m;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All multi-indices below g (inclusive) with their multinomial weights.
void sub_indices(const Monomial& g, int d, std::vector<std::pair<Monomial, long>>& out) {
  out.clear();
  out.emplace_back(Monomial{}, 1);
  for (int nu = 0; nu < d; ++nu) {
    const int top = g[nu];
    if (top == 0) continue;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      for (int k = 1; k <= top; ++k) {
        Monomial m = out[i].first;
        m[nu] = static_cast<std::uint8_t>(k);
        out.emplace_back(m, out[i].second * binomial(top, k));
      }
  }
}

// Derivative d^g of f, memoized by multi-index.
class DerivativeCache {
 public:
  explicit DerivativeCache(const WaveFunction& f) { cache_.emplace(Monomial{}, f); }

  const WaveFunction& get(const Monomial& g, int d) {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    int nu = 0;
    while (g[nu] == 0) ++nu;
    Monomial lower = g;
    lower[nu] -= 1;
    WaveFunction next = get(lower, d).derivative(nu);
    return cache_.emplace(g, std::move(next)).first->second;
  }

 private:
  std::map<Monomial, WaveFunction> cache_;
};

}  // namespace

DiffOperator::DiffOperator(int d, int ncomp) : d_(d), ncomp_(ncomp) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension outside 1.." + std::to_string(kMaxDim));
  if (ncomp < 1) throw std::invalid_argument("need at least one component");
}

DiffOperator DiffOperator::identity(int d, int ncomp) {
  DiffOperator op(d, ncomp);
  op.add_term(OpKey{}, scaled_identity(ncomp, GaussRational(1)));
  return op;
}

DiffOperator DiffOperator::partial(int d, int ncomp, int nu) {
  if (nu < 0 || nu >= d) throw std::out_of_range("partial index");
  DiffOperator op(d, ncomp);
  op.add_term(OpKey{Monomial{}, 0, Monomial::unit(nu)}, scaled_identity(ncomp, GaussRational(1)));
  return op;
}

DiffOperator DiffOperator::momentum(int d, int ncomp, int nu) {
  return GaussRational(Rational(0), Rational(-1)) * partial(d, ncomp, nu);
}

DiffOperator DiffOperator::scalar_function(int d, int ncomp, const Monomial& mono, int rpow, const GaussRational& c) {
  DiffOperator op(d, ncomp);
  op.add_term(OpKey{mono, rpow, Monomial{}}, scaled_identity(ncomp, c));
  return op;
}

DiffOperator DiffOperator::position(int d, int ncomp, int nu) {
  if (nu < 0 || nu >= d) throw std::out_of_range("position index");
  return scalar_function(d, ncomp, Monomial::unit(nu), 0, GaussRational(1));
}

DiffOperator DiffOperator::constant(int d, const ExactMatrix& m) { return matrix_function(d, m, Monomial{}, 0); }

DiffOperator DiffOperator::matrix_function(int d, const ExactMatrix& m, const Monomial& mono, int rpow) {
  if (m.rows() != m.cols()) throw DimensionMismatch("coefficient matrix must be square");
  DiffOperator op(d, static_cast<int>(m.rows()));
  op.add_term(OpKey{mono, rpow, Monomial{}}, m);
  return op;
}

int DiffOperator::order() const {
  int o = 0;
  for (const auto& [k, m] : terms_) o = std::max(o, k.deriv.degree());
  return o;
}

void DiffOperator::add_term(const OpKey& key, const ExactMatrix& m) {
  if (m.rows() != ncomp_ || m.cols() != ncomp_) throw DimensionMismatch("coefficient matrix size");
  if (is_exact_zero(m)) return;
  auto [it, inserted] = terms_.try_emplace(key, m);
  if (!inserted) {
    it->second += m;
    if (is_exact_zero(it->second)) terms_.erase(it);
  }
}

void DiffOperator::check_compatible(const DiffOperator& o) const {
  if (d_ != o.d_ || ncomp_ != o.ncomp_) throw DimensionMismatch("incompatible operators");
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  check_compatible(o);
  for (const auto& [k, m] : o.terms_) add_term(k, m);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  check_compatible(o);
  for (const auto& [k, m] : o.terms_) add_term(k, ExactMatrix(-m));
  return *this;
}

DiffOperator& DiffOperator::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, m] : terms_)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (!m(i, j).is_zero()) m(i, j) *= c;
  return *this;
}

DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
DiffOperator operator*(const GaussRational& c, DiffOperator a) { return a *= c; }

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.d() != b.d() || a.ncomp() != b.ncomp()) throw DimensionMismatch("incompatible operators");
  const int d = a.d();
  DiffOperator out(d, a.ncomp());
  std::vector<std::pair<Monomial, long>> subs;
  for (const auto& [ka, ma] : a.terms()) {
    sub_indices(ka.deriv, d, subs);
    for (const auto& [kb, mb] : b.terms()) {
      const ExactMatrix mab = multiply(ma, mb);
      if (is_exact_zero(mab)) continue;
      WaveFunction coef(d, 1, Rational(0));
      coef.add(0, kb.xpow, kb.rpow, GaussRational(1));
      DerivativeCache dc(coef);
      for (const auto& [delta, weight] : subs) {
        const Monomial rest = subtract(ka.deriv, delta) + kb.deriv;
        for (const auto& t : dc.get(delta, d).component(0)) {
          ExactMatrix m = mab;
          const GaussRational c = t.coeff * GaussRational(weight);
          for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
              if (!m(i, j).is_zero()) m(i, j) *= c;
          out.add_term(OpKey{ka.xpow + t.mono, ka.rpow + t.rpow, rest}, m);
        }
      }
    }
  }
  return out;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }
DiffOperator anticommutator(const DiffOperator& a, const DiffOperator& b) { return a * b + b * a; }

WaveFunction apply(const DiffOperator& op, const WaveFunction& f) {
  if (op.d() != f.d() || op.ncomp() != f.ncomp()) throw DimensionMismatch("operator and function differ in d or ncomp");
  TermAccumulator acc(f.d(), f.ncomp(), f.beta());
  DerivativeCache dc(f);
  const int n = f.ncomp();
  for (const auto& [k, m] : op.terms()) {
    const WaveFunction& g = dc.get(k.deriv, f.d());
    for (int b = 0; b < n; ++b) {
      const auto& comp = g.component(b);
      if (comp.empty()) continue;
      for (int a = 0; a < n; ++a) {
        const GaussRational& c = m(a, b);
        if (c.is_zero()) continue;
        for (const auto& t : comp) acc.add(a, t.mono + k.xpow, t.rpow + k.rpow, c * t.coeff);
      }
    }
  }
  return acc.finish();
}

WaveFunction apply_chain(const std::vector<const DiffOperator*>& ops, const WaveFunction& f) {
  WaveFunction g = f;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) g = apply(**it, g);
  return g;
}

}  // namespace lrl
