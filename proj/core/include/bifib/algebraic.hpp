#pragma once

#include <vector>

#include "bifib/roots.hpp"

namespace bifib {

// A root of a squarefree rational polynomial, identified by a certified
// isolating disk. The defining polynomial need not be irreducible; gcd
// splits shrink it opportunistically when callers test divisor candidates.
class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(const Rational& q);
  AlgebraicNumber(QPoly defining, RootBox box);

  // one entry per distinct root of f, multiplicity recorded on the box
  static std::vector<AlgebraicNumber> roots_of(const QPoly& f, long prec_cap = 1 << 14);

  const QPoly& defining() const { return defining_; }
  const RootBox& box() const { return box_; }
  // degree of the defining polynomial, an upper bound for the true degree
  long degree_bound() const { return defining_.deg(); }

  bool is_rational() const { return box_.has_exact; }
  Rational rational_value() const;

  ComplexApprox approx(long bits = 128, long prec_cap = 1 << 14) const;
  void refine(long target_bits, long prec_cap = 1 << 14) const;

  // rigorously decide g(alpha) == 0; shrinks the defining polynomial to the
  // matching gcd factor as a side effect
  bool vanishes_at(const QPoly& g, long prec_cap = 1 << 14) const;

  // decidable realness: true marks the box certified_real, false means the
  // isolating disk provably misses the real axis
  bool certify_real(long prec_cap = 1 << 14) const;

  // sign of (alpha - q) for a certified-real number: -1, 0, +1
  int compare_rational(const Rational& q, long prec_cap = 1 << 14) const;

  bool same_root(const AlgebraicNumber& other, long prec_cap = 1 << 14) const;

 private:
  // lazily refined caches; logical value never changes
  mutable QPoly defining_;
  mutable RootBox box_;
};

}  // namespace bifib
