#pragma once

// Terminating Kummer series, modified Bessel K0/K1 and adaptive quadrature.

#include <functional>
#include <stdexcept>
#include <vector>

namespace lrl {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 1F1(-n; b; z) = sum_{k=0}^{n} (-n)_k / (b)_k z^k / k!, summed in double-double precision.
/// Throws PoleError when b is an integer in [-n, 0].
double kummer_terminating(int n, double b, double z);

/// K_order(x) for order 0 or 1, x > 0. Series for x <= 2, Steed's continued fraction above.
double bessel_k(int order, double x);

/// I_order(x) for order 0 or 1 by the ascending series (moderate x only).
double bessel_i(int order, double x);

namespace detail {
double bessel_k_series(int order, double x);
double bessel_k_fraction(int order, double x);
}  // namespace detail

struct QuadratureRule {
  enum class Kind { simpson, gauss_legendre };
  Kind kind = Kind::gauss_legendre;
  double target = 1e-12;   // relative change between successive refinements
  int max_refinements = 20;
};

/// Adaptive integral of f over [a, b]; refinement doubles the panel count until two successive
/// estimates differ by less than target relative to the integral of |f|.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureRule& rule = {});

/// Integral of sampled data on a strictly increasing, possibly non-uniform grid
/// (piecewise quadratic through consecutive triples).
double integrate_samples(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lrl
