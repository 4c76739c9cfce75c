#pragma once

#include <string>
#include <utility>

#include "bifib/unipoly.hpp"

namespace bifib {

// rational function in one variable over the rationals; the denominator is
// monic and coprime to the numerator, zero is stored as 0/1
struct RatFunc {
  QPoly num;
  QPoly den{Rational(1)};

  RatFunc() = default;
  explicit RatFunc(const Rational& q) : num(q) {}
  explicit RatFunc(QPoly n) : num(std::move(n)) {}
  RatFunc(QPoly n, QPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  static RatFunc coordinate() {
    return RatFunc(QPoly(std::vector<Rational>{Rational(0), Rational(1)}));
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.deg() <= 0 && den.deg() == 0; }

  void normalize() {
    if (den.is_zero()) throw invalid_argument_error("rational function with zero denominator");
    if (num.is_zero()) {
      den = QPoly(Rational(1));
      return;
    }
    QPoly g = qpoly_gcd(num, den);
    if (g.deg() > 0) {
      num = qpoly_exact_div(num, g);
      den = qpoly_exact_div(den, g);
    }
    Rational inv = Rational(1) / den.lc();
    num = inv * num;
    den = inv * den;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = Rational(-1) * r.num;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw invalid_argument_error("division by a zero rational function");
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  bool defined_at(const Rational& x) const { return !den.eval_k(x).is_zero(); }

  Rational eval(const Rational& x) const {
    Rational d = den.eval_k(x);
    if (d.is_zero()) throw invalid_argument_error("rational function has a pole at the point");
    return num.eval_k(x) / d;
  }

  ComplexApprox eval_ca(const ComplexApprox& x) const {
    return qpoly_eval_ca(num, x) / qpoly_eval_ca(den, x);
  }

  std::string str(const std::string& var = "t") const {
    if (den.deg() == 0) return qpoly_str(num, var);
    return "(" + qpoly_str(num, var) + ")/(" + qpoly_str(den, var) + ")";
  }
};

inline bool kzero(const RatFunc& f) { return f.is_zero(); }
inline RatFunc zero_like(const RatFunc&) { return RatFunc(); }
inline RatFunc one_like(const RatFunc&) { return RatFunc(Rational(1)); }
inline RatFunc kmul_si(const RatFunc& f, long n) {
  if (n == 0) return RatFunc();
  RatFunc r = f;
  r.num = Rational(n) * r.num;
  return r;
}
inline RatFunc kmul_q(const RatFunc& f, const Rational& q) {
  if (q.is_zero()) return RatFunc();
  RatFunc r = f;
  r.num = q * r.num;
  return r;
}

}  // namespace bifib
