#pragma once

// Exact one-dimensional radial operators  sum_k M_k(r) d^k/dr^k  with Laurent-polynomial
// matrix coefficients, and closed-form radial functions  sum c r^p B(b r).

#include "lrl/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace lrl {

/// Dense nchan x nchan matrix of rationals, row-major.
struct RatMatrix {
  int n = 1;
  std::vector<Rational> a;

  explicit RatMatrix(int size = 1) : n(size), a(static_cast<std::size_t>(size * size), Rational(0)) {}
  static RatMatrix identity(int size, const Rational& c = 1);
  static RatMatrix sigma1(const Rational& c = 1);
  static RatMatrix sigma3(const Rational& c = 1);

  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  bool is_zero() const;
  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator*=(const Rational& c);
  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y);
  friend RatMatrix operator+(RatMatrix x, const RatMatrix& y) { return x += y; }
  friend RatMatrix operator*(const Rational& c, RatMatrix x) { return x *= c; }
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
};

enum class RadialBasis { exp, bessel_k0, bessel_k1 };

/// Vector of functions  sum c r^p B(b r)  with B = exp(-b r), K0(b r) or K1(b r) and one shared b.
class RadialExpansion {
 public:
  using Key = std::pair<Rational, RadialBasis>;  // (power, basis)

  RadialExpansion(int nchan, Rational decay);

  int nchan() const { return static_cast<int>(comps_.size()); }
  const Rational& decay() const { return b_; }
  const std::map<Key, Rational>& component(int i) const { return comps_.at(static_cast<std::size_t>(i)); }

  void add(int i, const Rational& power, RadialBasis basis, const Rational& c);
  RadialExpansion derivative() const;
  bool is_zero() const;

  RadialExpansion& operator+=(const RadialExpansion& o);
  RadialExpansion& operator-=(const RadialExpansion& o);
  RadialExpansion& operator*=(const Rational& c);

  /// Floating-point values of every channel at r > 0.
  std::vector<double> evaluate(double r) const;

 private:
  void check_compatible(const RadialExpansion& o) const;

  Rational b_;
  std::vector<std::map<Key, Rational>> comps_;
};

/// sum over (order k, power q) of M r^q d^k/dr^k.
class RadialOperator {
 public:
  using Key = std::pair<int, int>;  // (derivative order, power of r)

  explicit RadialOperator(int nchan);

  static RadialOperator identity(int nchan);
  static RadialOperator derivative(int nchan);
  /// Multiplication by m r^q.
  static RadialOperator multiply(const RatMatrix& m, int q);

  int nchan() const { return n_; }
  const std::map<Key, RatMatrix>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(int order, int q, const RatMatrix& m);

  RadialOperator& operator+=(const RadialOperator& o);
  RadialOperator& operator-=(const RadialOperator& o);
  RadialOperator& operator*=(const Rational& c);

  RadialExpansion apply(const RadialExpansion& f) const;
  /// r^{-s} O r^{s}.
  RadialOperator conjugated(const Rational& s) const;

 private:
  int n_;
  std::map<Key, RatMatrix> terms_;
};

RadialOperator operator+(RadialOperator a, const RadialOperator& b);
RadialOperator operator-(RadialOperator a, const RadialOperator& b);
RadialOperator operator*(const Rational& c, RadialOperator a);
/// Composition, (a*b) f = a(b f), in normal-ordered form.
RadialOperator operator*(const RadialOperator& a, const RadialOperator& b);

}  // namespace lrl
