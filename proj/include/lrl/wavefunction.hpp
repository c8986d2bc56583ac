#pragma once

// Closed function class  sum_k c_k x^{a_k} r^{p_k} exp(-beta r), vector valued.

#include "lrl/rational.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <stdexcept>
#include <vector>

namespace lrl {

inline constexpr int kMaxDim = 8;

/// Exponent multi-index over x_1..x_d.
struct Monomial {
  std::array<std::uint8_t, kMaxDim> e{};

  static Monomial unit(int nu) {
    Monomial m;
    m.e[static_cast<std::size_t>(nu)] = 1;
    return m;
  }
  int degree() const;
  std::uint8_t operator[](int nu) const { return e[static_cast<std::size_t>(nu)]; }
  std::uint8_t& operator[](int nu) { return e[static_cast<std::size_t>(nu)]; }
  Monomial operator+(const Monomial& o) const;
  bool is_one() const { return degree() == 0; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// One term c * x^mono * r^rpow (the shared exponential is implicit).
struct Term {
  Monomial mono;
  int rpow = 0;
  GaussRational coeff;
};

struct TermKey {
  Monomial mono;
  int rpow = 0;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const noexcept;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularPoint : std::domain_error {
  using std::domain_error::domain_error;
};

class WaveFunction {
 public:
  WaveFunction(int d, int ncomp, Rational beta);

  int d() const { return d_; }
  int ncomp() const { return ncomp_; }
  const Rational& beta() const { return beta_; }
  const std::vector<Term>& component(int a) const { return comps_.at(static_cast<std::size_t>(a)); }
  std::size_t term_count() const;
  bool empty() const { return term_count() == 0; }

  /// Adds c x^mono r^rpow to component a (like terms are combined).
  void add(int a, const Monomial& mono, int rpow, const GaussRational& c);

  /// Partial derivative with respect to x_nu (0-based), exact.
  WaveFunction derivative(int nu) const;

  WaveFunction& operator+=(const WaveFunction& o);
  WaveFunction& operator-=(const WaveFunction& o);
  WaveFunction& operator*=(const GaussRational& c);

  /// Largest |mono| + rpow and smallest rpow over all terms.
  int max_weight() const;
  int min_rpow() const;

  friend class TermAccumulator;

 private:
  void check_compatible(const WaveFunction& o) const;

  int d_;
  int ncomp_;
  Rational beta_;
  std::vector<std::vector<Term>> comps_;  // sorted by (mono, rpow), no zero coefficients
};

/// Hash-based builder for large sums; finish() produces the sorted form.
class TermAccumulator {
 public:
  TermAccumulator(int d, int ncomp, Rational beta);
  void add(int a, const Monomial& mono, int rpow, const GaussRational& c);
  void add(const WaveFunction& f, const GaussRational& scale = GaussRational(1));
  WaveFunction finish();

 private:
  int d_;
  int ncomp_;
  Rational beta_;
  std::vector<std::unordered_map<TermKey, GaussRational, TermKeyHash>> maps_;
};

WaveFunction operator+(WaveFunction a, const WaveFunction& b);
WaveFunction operator-(WaveFunction a, const WaveFunction& b);
WaveFunction operator*(const GaussRational& c, WaveFunction f);

/// Value f + g r at a rational point, with f, g exact. When r^2 is a perfect
/// square, r is folded into the even part and odd is zero.
struct ParityPair {
  GaussRational even;
  GaussRational odd;
  bool is_zero() const { return even.is_zero() && odd.is_zero(); }
  friend bool operator==(const ParityPair&, const ParityPair&) = default;
};

using RationalPoint = std::vector<Rational>;

/// Exact value of each component at x (exp(-beta r) factored out).
std::vector<ParityPair> evaluate(const WaveFunction& f, const RationalPoint& x);

/// Floating-point value at x including the exponential, for cross-checks.
std::vector<std::complex<double>> evaluate_numeric(const WaveFunction& f, const std::vector<double>& x);

WaveFunction random_test_function(int d, int ncomp, int max_degree, const Rational& beta, std::uint64_t seed);

/// Deterministic random rational points x != 0 with coordinates p/q, |p| <= radius, q in {1,2,3}.
std::vector<RationalPoint> sample_points(int d, int npoints, int radius, std::uint64_t seed);

/// Number of distinct coordinate values available at the given radius.
int sample_set_size(int radius);

struct ZeroTest {
  bool zero = true;
  std::optional<RationalPoint> witness;
  int degree_bound = 0;
  int radius = 9;
  /// Upper bound on Pr[nonzero function passes every point] from the
  /// Schwartz-Zippel lemma applied to the even and odd numerators.
  double false_zero_bound = 0.0;
};

ZeroTest zero_test(const WaveFunction& f, int npoints, std::uint64_t seed);

inline bool is_zero_function(const WaveFunction& f, int npoints, std::uint64_t seed) {
  return zero_test(f, npoints, seed).zero;
}

}  // namespace lrl
