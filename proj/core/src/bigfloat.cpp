#include "bifib/bigfloat.hpp"

#include <ostream>
#include <vector>

#include "bifib/errors.hpp"

namespace bifib {

BigInt BigFloat::to_bigint_nearest() const {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v_));
  mpfr_round(t, v_);
  BigInt z;
  mpfr_get_z(z.backend().data(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

Rational BigFloat::to_rational_exact() const {
  if (mpfr_zero_p(v_)) return Rational(0);
  if (!mpfr_number_p(v_)) throw invalid_argument_error("non-finite value has no rational form");
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, v_);
  BigInt m;
  mpz_set(m.backend().data(), z);
  mpz_clear(z);
  if (e >= 0) {
    m <<= e;
    return Rational(m);
  }
  BigInt den(1);
  den <<= -e;
  return Rational(m, den);
}

std::string BigFloat::str(int digits10) const {
  if (is_nan()) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%%.%dRg", digits10);
  std::vector<char> out(static_cast<size_t>(digits10) + 64);
  mpfr_snprintf(out.data(), out.size(), buf, v_);
  return std::string(out.data());
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(); }

}  // namespace bifib
