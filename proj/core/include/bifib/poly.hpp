#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bifib/unipoly.hpp"

namespace bifib {

// exponent vector, fixed max arity to keep map keys cheap
struct Mono {
  std::array<uint16_t, 8> e{};
  bool operator<(const Mono& o) const { return e < o.e; }
  bool operator==(const Mono& o) const { return e == o.e; }
};

// sparse multivariate polynomial over Q with a fixed variable count;
// no zero coefficients are stored, so the map itself is the canonical form
class MultiPoly {
 public:
  MultiPoly() : arity_(0) {}
  explicit MultiPoly(int arity) : arity_(arity) {}
  static MultiPoly constant(int arity, const Rational& q);
  static MultiPoly var(int arity, int v, int power = 1);
  static MultiPoly term(int arity, const Mono& m, const Rational& q);

  int arity() const { return arity_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }
  const std::map<Mono, Rational>& terms() const { return t_; }

  int total_degree() const;
  int degree_in(int v) const;

  MultiPoly& add_term(const Mono& m, const Rational& q);

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rational& k, const MultiPoly& a);
  MultiPoly operator-() const;
  bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && t_ == o.t_; }

  MultiPoly pow(int e) const;
  MultiPoly derivative(int v) const;

  // substitute variable v by g (same arity)
  MultiPoly substitute(int v, const MultiPoly& g) const;
  // fix variable v to a rational constant
  MultiPoly partial_eval(int v, const Rational& q) const;
  // append fresh variables on the right
  MultiPoly extend_arity(int new_arity) const;
  // drop a variable that no longer occurs
  MultiPoly drop_var(int v) const;

  Rational eval(const std::vector<Rational>& xs) const;
  ComplexApprox eval_ca(const std::vector<ComplexApprox>& xs) const;

  // coefficients as polynomials in the remaining variables; index = power of v
  std::vector<MultiPoly> coeffs_in(int v) const;
  // requires the polynomial to involve only variable v
  QPoly to_qpoly(int v) const;
  static MultiPoly from_qpoly(const QPoly& f, int arity, int v);

  std::string str(const std::vector<std::string>& names) const;

 private:
  int arity_;
  std::map<Mono, Rational> t_;
};

MultiPoly mp_exact_div(const MultiPoly& f, const MultiPoly& g);
MultiPoly mp_resultant(const MultiPoly& f, const MultiPoly& g, int v);
MultiPoly det_bareiss(std::vector<std::vector<MultiPoly>> m);

}  // namespace bifib
