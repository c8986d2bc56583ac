#pragma once

// Exact scalar types: GMP rationals and Gaussian rationals usable as Eigen scalars.

#include <gmpxx.h>

#include <Eigen/Core>

#include <ostream>
#include <string>
#include <string_view>

namespace lrl {

using Rational = mpq_class;

/// p/q in canonical form (mpq_class(p, q) does not reduce).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Complex number with exact rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(int v) : re(v), im(0) {}  // NOLINT: implicit, Eigen needs Scalar(0), Scalar(1)
  GaussRational(long v) : re(v), im(0) {}  // NOLINT
  GaussRational(const Rational& r) : re(r), im(0) {}  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
};

inline GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
inline GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
inline GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
inline GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
inline GaussRational operator-(const GaussRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
inline bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

// Eigen looks these up by ADL.
inline GaussRational conj(const GaussRational& z) { return {z.re, Rational(-z.im)}; }
inline Rational real(const GaussRational& z) { return z.re; }
inline Rational imag(const GaussRational& z) { return z.im; }
inline Rational abs2(const GaussRational& z) { return Rational(z.re * z.re + z.im * z.im); }

std::ostream& operator<<(std::ostream& os, const GaussRational& z);
std::string to_string(const GaussRational& z);

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExactMatrix = DenseMatrix<GaussRational>;

/// Exact test for the zero matrix (no tolerance).
bool is_exact_zero(const ExactMatrix& m);

/// Sum of |entry|^2, exact.
Rational frobenius_norm2(const ExactMatrix& m);

ExactMatrix adjoint(const ExactMatrix& m);

/// Matrix product that skips zero entries; the matrices here are mostly monomial.
ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace lrl

namespace Eigen {

template <>
struct NumTraits<lrl::GaussRational> : GenericNumTraits<lrl::GaussRational> {
  using Real = lrl::Rational;
  using NonInteger = lrl::GaussRational;
  using Nested = lrl::GaussRational;
  using Literal = lrl::GaussRational;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
