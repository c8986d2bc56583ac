#pragma once

// Matrix differential operators  sum M x^a r^k d^g  acting on WaveFunction.

#include "lrl/wavefunction.hpp"

#include <map>
#include <vector>

namespace lrl {

struct OpKey {
  Monomial xpow;
  int rpow = 0;
  Monomial deriv;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

class DiffOperator {
 public:
  DiffOperator(int d, int ncomp);

  static DiffOperator identity(int d, int ncomp);
  /// d/dx_nu (0-based).
  static DiffOperator partial(int d, int ncomp, int nu);
  /// p_nu = -i d/dx_nu.
  static DiffOperator momentum(int d, int ncomp, int nu);
  /// Multiplication by c x^mono r^rpow times the identity matrix.
  static DiffOperator scalar_function(int d, int ncomp, const Monomial& mono, int rpow, const GaussRational& c);
  static DiffOperator position(int d, int ncomp, int nu);
  /// Multiplication by the constant matrix m.
  static DiffOperator constant(int d, const ExactMatrix& m);
  /// Multiplication by m x^mono r^rpow.
  static DiffOperator matrix_function(int d, const ExactMatrix& m, const Monomial& mono, int rpow);

  int d() const { return d_; }
  int ncomp() const { return ncomp_; }
  const std::map<OpKey, ExactMatrix>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  /// Highest total derivative order (0 for multiplication operators).
  int order() const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(const OpKey& key, const ExactMatrix& m);

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const GaussRational& c);

 private:
  void check_compatible(const DiffOperator& o) const;

  int d_;
  int ncomp_;
  std::map<OpKey, ExactMatrix> terms_;
};

DiffOperator operator+(DiffOperator a, const DiffOperator& b);
DiffOperator operator-(DiffOperator a, const DiffOperator& b);
DiffOperator operator*(const GaussRational& c, DiffOperator a);

/// Normal-ordered product (a then b applied first): (a*b) f = a(b f).
DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);
DiffOperator anticommutator(const DiffOperator& a, const DiffOperator& b);

WaveFunction apply(const DiffOperator& op, const WaveFunction& f);

/// Applies the product ops[0] ops[1] ... ops[n-1] right to left without forming it.
WaveFunction apply_chain(const std::vector<const DiffOperator*>& ops, const WaveFunction& f);

}  // namespace lrl
