#pragma once

#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>
#include <iosfwd>
#include <string>
#include <utility>

namespace bifib {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Arbitrary precision real backed by MPFR. Precision is explicit per value;
// binary operations work at the max precision of their operands, so escalation
// is driven entirely by the precision of the inputs a caller constructs.
class BigFloat {
 public:
  BigFloat() : BigFloat(64) {}
  explicit BigFloat(long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_nan(v_);
  }
  BigFloat(double x, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(const Rational& q, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
  }
  BigFloat(const BigInt& z, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_z(v_, z.backend().data(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  long prec() const { return mpfr_get_prec(v_); }
  BigFloat with_prec(long p) const {
    BigFloat r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log10(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_log10(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat exp(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(joint(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sin(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r(joint(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow_ui(const BigFloat& a, unsigned long e) {
    BigFloat r(a.prec());
    mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigFloat floor(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_floor(r.v_, a.v_);
    return r;
  }
  friend BigFloat round_nearest(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_round(r.v_, a.v_);
    return r;
  }
  friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }
  friend BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

  static BigFloat pi(long prec_bits) {
    BigFloat r(prec_bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  // round to nearest integer, returned exactly
  BigInt to_bigint_nearest() const;
  // the stored value is a dyadic rational; recover it exactly
  Rational to_rational_exact() const;
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  std::string str(int digits10 = 20) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  static long clamp_prec(long p) { return p < 2 ? 2 : p; }
  static long joint(const BigFloat& a, const BigFloat& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
  }
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

}  // namespace bifib
