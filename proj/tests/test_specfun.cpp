#include "lrl/rational.hpp"
#include "lrl/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lrl;

namespace {

// Exact three-term recurrence in n: (b+n) M_{n+1} = (2n + b - z) M_n - n M_{n-1}.
double kummer_recurrence_exact(int n, double b, double z) {
  const Rational bb(b), zz(z);
  Rational m0 = 1, m1 = 1 - zz / bb;
  if (n == 0) return 1.0;
  for (int k = 1; k < n; ++k) {
    Rational m2 = ((2 * k + bb - zz) * m1 - k * m0) / (bb + k);
    m0 = std::move(m1);
    m1 = std::move(m2);
  }
  return m1.get_d();
}

}  // namespace

TEST_CASE("terminating Kummer series examples") {
  CHECK(kummer_terminating(0, 2.5, 17.0) == 1.0);
  CHECK(kummer_terminating(1, 2, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(kummer_terminating(2, 3, 2)) < 1e-15);
  CHECK_THROWS_AS(kummer_terminating(3, 0, 1.0), PoleError);
  CHECK_THROWS_AS(kummer_terminating(3, -2, 1.0), PoleError);
  CHECK_THROWS_AS(kummer_terminating(3, -3, 1.0), PoleError);
  CHECK_NOTHROW(kummer_terminating(3, -4, 1.0));
  CHECK_NOTHROW(kummer_terminating(3, -1.5, 1.0));
}

TEST_CASE("Kummer series matches the exact contiguous recurrence") {
  double worst = 0;
  for (int n = 0; n <= 30; ++n)
    for (double b : {1.0, 2.0, 3.5, 7.0, 12.0})
      for (double z = -50.0; z <= 50.0; z += 3.125) {
        const double ref = kummer_recurrence_exact(n, b, z);
        const double got = kummer_terminating(n, b, z);
        const double rel = std::abs(got - ref) / std::abs(ref);
        worst = std::max(worst, rel);
      }
  CHECK(worst <= 1e-13);
}

TEST_CASE("Bessel K reference values from the standard library") {
  for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 7.5, 20.0, 50.0, 300.0})
    for (int order : {0, 1}) {
      CAPTURE(x);
      CAPTURE(order);
      const double ref = std::cyl_bessel_k(static_cast<double>(order), x);
      CHECK(std::abs(bessel_k(order, x) - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("Wronskian K0 I1 + K1 I0 = 1/x") {
  for (double x : {0.05, 0.5, 1.0, 2.0, 2.5, 5.0, 10.0}) {
    CAPTURE(x);
    const double w = bessel_k(0, x) * bessel_i(1, x) + bessel_k(1, x) * bessel_i(0, x);
    CHECK(std::abs(w * x - 1.0) < 1e-12);
  }
}

TEST_CASE("Bessel branches agree at the switch point") {
  for (int order : {0, 1}) {
    const double s = detail::bessel_k_series(order, 2.0);
    const double c = detail::bessel_k_fraction(order, 2.0);
    CHECK(std::abs(s - c) <= 1e-10 * c);
  }
}

TEST_CASE("Bessel K limits") {
  CHECK(std::abs(1e-6 * bessel_k(1, 1e-6) - 1.0) < 1e-8);
  CHECK(std::abs(bessel_k(0, 50.0) * std::exp(50.0) * std::sqrt(100.0 / std::numbers::pi) - 1.0) < 3e-3);
  // ratio to the Hankel asymptotic series sum_k a_k / x^k, a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
  const double x = 50.0;
  double term = 1.0, series = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
    series += term;
  }
  CHECK(std::abs(bessel_k(0, x) * std::exp(x) * std::sqrt(2 * x / std::numbers::pi) / series - 1.0) < 1e-6);
  CHECK_THROWS_AS(bessel_k(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k(1, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k(2, 1.0), std::invalid_argument);
}

TEST_CASE("Bessel K is positive and decreasing") {
  for (int order : {0, 1}) {
    double prev = bessel_k(order, 1e-4);
    for (double x = 2e-4; x < 60; x *= 1.07) {
      const double v = bessel_k(order, x);
      CHECK(v > 0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("adaptive quadrature") {
  auto f = [](double r) { return r * r * std::exp(-2 * r); };
  for (auto kind : {QuadratureRule::Kind::simpson, QuadratureRule::Kind::gauss_legendre}) {
    QuadratureRule rule;
    rule.kind = kind;
    rule.target = 1e-13;
    CHECK(std::abs(integrate(f, 0, 60, rule) - 0.25) < 1e-10);
    CHECK(std::abs(integrate([](double x) { return x * x * x * std::exp(-x * x); }, -3, 3, rule)) < 1e-12);
  }
  QuadratureRule rule;
  rule.max_refinements = 6;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0, 1, rule), NonConvergence);
  rule.kind = QuadratureRule::Kind::simpson;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0, 1, rule), NonConvergence);
}

TEST_CASE("sampled quadrature on a logarithmic grid") {
  std::vector<double> x, y;
  for (int i = 0; i <= 4000; ++i) {
    const double r = 1e-6 * std::exp(i * std::log(60e6) / 4000);
    x.push_back(r);
    y.push_back(r * r * std::exp(-2 * r));
  }
  CHECK(std::abs(integrate_samples(x, y) - 0.25) < 1e-9);
  CHECK(integrate_samples({0, 1, 3}, {1, 1, 1}) == doctest::Approx(3.0));
  CHECK(integrate_samples({0, 1, 3}, {0, 1, 9}) == doctest::Approx(9.0));  // x^2 exactly
}
