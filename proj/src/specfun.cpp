#include "lrl/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lrl {

namespace {

// Double-double value hi + lo.
struct DD {
  double hi = 0;
  double lo = 0;
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

DD mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

DD div(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  const DD r = add(a, mul(b, DD{-q1, 0}));
  const double q2 = r.hi / b.hi;
  return two_sum(q1, q2);
}

constexpr double kEuler = 0.57721566490153286060651209008240243;

}  // namespace

double kummer_terminating(int n, double b, double z) {
  if (n < 0) throw std::invalid_argument("kummer_terminating needs n >= 0");
  if (b <= 0 && b >= -n && b == std::floor(b))
    throw PoleError("1F1(-" + std::to_string(n) + "; b; z) has a pole at b = " + std::to_string(b));
  DD term{1, 0}, sum{1, 0};
  const DD zz{z, 0};
  for (int k = 1; k <= n; ++k) {
    const DD num = mul(DD{static_cast<double>(k - 1 - n), 0}, zz);
    const DD den = mul(two_sum(b, static_cast<double>(k - 1)), DD{static_cast<double>(k), 0});
    term = div(mul(term, num), den);
    sum = add(sum, term);
  }
  return sum.hi + sum.lo;
}

double bessel_i(int order, double x) {
  if (order != 0 && order != 1) throw std::invalid_argument("bessel_i supports orders 0 and 1");
  const double y = 0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= y / (static_cast<double>(k) * (k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

namespace detail {

double bessel_k_series(int order, double x) {
  const double y = 0.25 * x * x;
  const double lg = std::log(0.5 * x);
  if (order == 0) {
    // K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} H_k y^k / (k!)^2
    double term = 1.0, h = 0.0, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= y / (static_cast<double>(k) * k);
      h += 1.0 / k;
      sum += h * term;
      if (h * term < 1e-17 * std::abs(sum)) break;
    }
    return -(lg + kEuler) * bessel_i(0, x) + sum;
  }
  // K1 = 1/x + ln(x/2) I1 - (x/4) sum_{k>=0} (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
  double term = 1.0, hk = 0.0;
  double sum = (-kEuler) + (1.0 - kEuler);
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    const double c = (hk - kEuler) + (hk + 1.0 / (k + 1) - kEuler);
    sum += c * term;
    if (std::abs(c * term) < 1e-17 * std::abs(sum)) break;
  }
  return 1.0 / x + lg * bessel_i(1, x) - 0.25 * x * sum;
}

double bessel_k_fraction(int order, double x) {
  // Steed's method for the Temme continued fraction, order 0 (and 1 by the ratio).
  constexpr double eps = 1e-17;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  if (i == 100000) throw NonConvergence("bessel_k continued fraction did not converge");
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  if (order == 0) return k0;
  return k0 * (x + 0.5 - h) / x;
}

}  // namespace detail

double bessel_k(int order, double x) {
  if (order != 0 && order != 1) throw std::invalid_argument("bessel_k supports orders 0 and 1");
  if (!(x > 0)) throw std::domain_error("bessel_k needs x > 0");
  return x <= 2.0 ? detail::bessel_k_series(order, x) : detail::bessel_k_fraction(order, x);
}

namespace {

struct GaussNodes {
  std::vector<double> x, w;
};

GaussNodes gauss_legendre(int n) {
  GaussNodes g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    g.x[static_cast<std::size_t>(i)] = -z;
    g.x[static_cast<std::size_t>(n - 1 - i)] = z;
    g.w[static_cast<std::size_t>(i)] = g.w[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return g;
}

const GaussNodes& gl16() {
  static const GaussNodes g = gauss_legendre(16);
  return g;
}

// Returns (integral of f, integral of |f|) with the given panel count.
std::pair<double, double> composite(const std::function<double(double)>& f, double a, double b, int panels,
                                    QuadratureRule::Kind kind) {
  const double h = (b - a) / panels;
  double s = 0, sa = 0;
  if (kind == QuadratureRule::Kind::simpson) {
    for (int i = 0; i <= 2 * panels; ++i) {
      const double w = (i == 0 || i == 2 * panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double v = f(a + 0.5 * h * i);
      s += w * v;
      sa += w * std::abs(v);
    }
    return {s * h / 6.0, sa * h / 6.0};
  }
  const auto& g = gl16();
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
      const double v = f(mid + 0.5 * h * g.x[k]);
      s += g.w[k] * v;
      sa += g.w[k] * std::abs(v);
    }
  }
  return {0.5 * h * s, 0.5 * h * sa};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureRule& rule) {
  if (!(b > a)) throw std::invalid_argument("integrate needs a < b");
  double prev = composite(f, a, b, 1, rule.kind).first;
  for (int r = 1, panels = 2; r <= rule.max_refinements; ++r, panels *= 2) {
    auto [cur, sc] = composite(f, a, b, panels, rule.kind);
    if (!std::isfinite(cur)) throw NonConvergence("integrand is not finite on the interval");
    if (std::abs(cur - prev) <= rule.target * std::max(sc, 1e-300)) return cur;
    prev = cur;
  }
  throw NonConvergence("quadrature did not reach the target after " + std::to_string(rule.max_refinements) +
                       " refinements");
}

double integrate_samples(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("integrate_samples needs matching grids");
  double s = 0;
  std::size_t i = 0;
  for (; i + 2 < x.size(); i += 2) {
    // exact integral of the quadratic through (x0,y0), (x1,y1), (x2,y2)
    const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1], H = h0 + h1;
    s += H / 6.0 *
         ((2.0 - h1 / h0) * y[i] + (H * H / (h0 * h1)) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < x.size()) s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return s;
}

}  // namespace lrl
