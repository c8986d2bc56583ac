#include "lrl/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace lrl {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
  mpz_class n(num, 10), dd(den, 10);
  if (dd == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(n, dd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  const Rational n = o.re * o.re + o.im * o.im;
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << to_string(z); }

std::string to_string(const GaussRational& z) {
  if (z.is_real()) return z.re.get_str();
  if (sgn(z.re) == 0) return z.im.get_str() + "i";
  std::ostringstream os;
  os << z.re.get_str() << (sgn(z.im) > 0 ? "+" : "") << z.im.get_str() << "i";
  return os.str();
}

bool is_exact_zero(const ExactMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

Rational frobenius_norm2(const ExactMatrix& m) {
  Rational s = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += abs2(m(i, j));
  return s;
}

ExactMatrix adjoint(const ExactMatrix& m) {
  ExactMatrix a(m.cols(), m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) a(j, i) = conj(m(i, j));
  return a;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix c = ExactMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

}  // namespace lrl
