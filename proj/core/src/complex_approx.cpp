#include "bifib/complex_approx.hpp"

#include <cmath>

namespace bifib {

ComplexApprox sqrt(const ComplexApprox& z) {
  long p = z.prec();
  BigFloat r = hypot(z.re_, z.im_);
  if (r.is_zero()) {
    // sqrt is 1/2-Hoelder at 0, not Lipschitz
    return ComplexApprox(BigFloat(0.0, p), BigFloat(0.0, p), std::sqrt((double)z.err_));
  }
  BigFloat theta = atan2(z.im_, z.re_);
  BigFloat half(0.5, p);
  BigFloat sr = sqrt(r);
  ComplexApprox w(sr * cos(theta * half), sr * sin(theta * half), 0.0L);
  long double rm = r.to_long_double();
  long double e;
  if (rm > 4.0L * z.err_) {
    e = z.err_ / (2.0L * std::sqrt((long double)(rm - z.err_)));
  } else {
    e = std::sqrt((long double)(z.err_ + rm));
  }
  w.set_err(e + w.mag() * 8.0L * ComplexApprox::rounding_eps(p));
  return w;
}

ComplexApprox log(const ComplexApprox& z) {
  long p = z.prec();
  long double m = z.mag();
  if (m <= 2.0L * z.err_) throw precision_exhausted("log of a value indistinguishable from zero");
  BigFloat r = hypot(z.re_, z.im_);
  ComplexApprox w(log(r), atan2(z.im_, z.re_), 0.0L);
  // d log = dz / z, plus the branch is only as stable as the argument itself
  w.set_err(2.0L * z.err_ / m + w.mag() * 8.0L * ComplexApprox::rounding_eps(p));
  return w;
}

ComplexApprox exp(const ComplexApprox& z) {
  long p = z.prec();
  BigFloat m = exp(z.re_);
  ComplexApprox w(m * cos(z.im_), m * sin(z.im_), 0.0L);
  w.set_err(w.mag() * (2.0L * z.err_ + 8.0L * ComplexApprox::rounding_eps(p)));
  return w;
}

ComplexApprox scalar(double x, long prec) { return ComplexApprox(x, 0.0, prec); }

ComplexApprox scalar(const Rational& x, long prec) {
  return ComplexApprox::from_rational(x, Rational(0), prec);
}

}  // namespace bifib
