#pragma once

#include <limits>

#include "bifib/bigfloat.hpp"
#include "bifib/errors.hpp"

namespace bifib {

// Complex number with a tracked absolute error bound. The bound is propagated
// conservatively to first order with per-operation rounding slop; it is an
// engineering bound, not formal interval arithmetic.
class ComplexApprox {
 public:
  ComplexApprox() : re_(0.0, 64), im_(0.0, 64), err_(0.0L) {}
  ComplexApprox(BigFloat re, BigFloat im, long double err = 0.0L)
      : re_(std::move(re)), im_(std::move(im)), err_(err) {}
  ComplexApprox(double re, double im, long prec, long double err = 0.0L)
      : re_(re, prec), im_(im, prec), err_(err) {}
  static ComplexApprox from_rational(const Rational& re, const Rational& im, long prec) {
    // rounding of an exact rational into prec bits is the only error
    ComplexApprox z(BigFloat(re, prec), BigFloat(im, prec), 0.0L);
    z.err_ = z.mag() * rounding_eps(prec);
    return z;
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  long double err() const { return err_; }
  void set_err(long double e) { err_ = e; }
  long prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }
  ComplexApprox with_prec(long p) const {
    return ComplexApprox(re_.with_prec(p), im_.with_prec(p), err_ + mag() * rounding_eps(p));
  }

  // |center| as long double, clamped away from overflow
  long double mag() const {
    long double m = hypot(re_, im_).to_long_double();
    if (m > 1e4000L) m = 1e4000L;
    return m;
  }
  BigFloat abs() const { return hypot(re_, im_); }

  bool definitely_nonzero() const { return mag() > 4.0L * err_; }
  // zero up to the tracked error; used for branch decisions in numeric domains
  bool approx_zero() const { return !definitely_nonzero(); }

  friend ComplexApprox operator+(const ComplexApprox& a, const ComplexApprox& b) {
    ComplexApprox r(a.re_ + b.re_, a.im_ + b.im_, a.err_ + b.err_);
    r.err_ += r.mag() * rounding_eps(r.prec());
    return r;
  }
  friend ComplexApprox operator-(const ComplexApprox& a, const ComplexApprox& b) {
    ComplexApprox r(a.re_ - b.re_, a.im_ - b.im_, a.err_ + b.err_);
    r.err_ += r.mag() * rounding_eps(r.prec());
    return r;
  }
  ComplexApprox operator-() const { return ComplexApprox(-re_, -im_, err_); }
  friend ComplexApprox operator*(const ComplexApprox& a, const ComplexApprox& b) {
    BigFloat re = a.re_ * b.re_ - a.im_ * b.im_;
    BigFloat im = a.re_ * b.im_ + a.im_ * b.re_;
    long double e = a.mag() * b.err_ + b.mag() * a.err_ + a.err_ * b.err_;
    ComplexApprox r(std::move(re), std::move(im), e);
    r.err_ += r.mag() * 4.0L * rounding_eps(r.prec());
    return r;
  }
  friend ComplexApprox operator/(const ComplexApprox& a, const ComplexApprox& b) {
    long double bm = b.mag();
    if (bm <= 2.0L * b.err_)
      throw precision_exhausted("division by a value indistinguishable from zero");
    BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
    BigFloat re = (a.re_ * b.re_ + a.im_ * b.im_) / n;
    BigFloat im = (a.im_ * b.re_ - a.re_ * b.im_) / n;
    ComplexApprox r(std::move(re), std::move(im), 0.0L);
    long double qm = r.mag();
    r.err_ = (a.err_ + qm * b.err_) / (bm - b.err_) + qm * 8.0L * rounding_eps(r.prec());
    return r;
  }
  ComplexApprox& operator+=(const ComplexApprox& o) { return *this = *this + o; }
  ComplexApprox& operator-=(const ComplexApprox& o) { return *this = *this - o; }
  ComplexApprox& operator*=(const ComplexApprox& o) { return *this = *this * o; }
  ComplexApprox& operator/=(const ComplexApprox& o) { return *this = *this / o; }

  ComplexApprox conj() const { return ComplexApprox(re_, -im_, err_); }

  // principal square root via polar form
  friend ComplexApprox sqrt(const ComplexApprox& z);
  friend ComplexApprox log(const ComplexApprox& z);
  friend ComplexApprox exp(const ComplexApprox& z);

  static long double rounding_eps(long prec) {
    return std::numeric_limits<long double>::denorm_min() +
           4.0L * std::pow(0.5L, static_cast<long double>(prec < 16000 ? prec : 16000));
  }

 private:
  BigFloat re_, im_;
  long double err_;
};

ComplexApprox scalar(double x, long prec);
ComplexApprox scalar(const Rational& x, long prec);

}  // namespace bifib
