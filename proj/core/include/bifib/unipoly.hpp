#pragma once

#include <utility>
#include <vector>

#include "bifib/bigfloat.hpp"
#include "bifib/complex_approx.hpp"
#include "bifib/errors.hpp"

namespace bifib {

// coefficient-field hooks for the generic polynomial code
inline bool kzero(const Rational& q) { return q.is_zero(); }
inline bool kzero(const ComplexApprox& z) { return z.approx_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline ComplexApprox zero_like(const ComplexApprox& z) {
  return ComplexApprox(0.0, 0.0, z.prec());
}
inline ComplexApprox one_like(const ComplexApprox& z) { return ComplexApprox(1.0, 0.0, z.prec()); }
inline Rational kmul_si(const Rational& q, long n) { return q * n; }
inline ComplexApprox kmul_si(const ComplexApprox& z, long n) {
  return z * ComplexApprox(static_cast<double>(n), 0.0, z.prec());
}
inline Rational kmul_q(const Rational& a, const Rational& q) { return a * q; }
inline ComplexApprox kmul_q(const ComplexApprox& z, const Rational& q) {
  return z * ComplexApprox(BigFloat(q, z.prec()), BigFloat(0.0, z.prec()));
}

// dense univariate polynomial over a field K; c[i] is the coefficient of x^i,
// normalized so the vector is empty (zero polynomial) or ends in a nonzero
template <class K>
struct UPoly {
  std::vector<K> c;

  UPoly() = default;
  explicit UPoly(K k) {
    c.push_back(std::move(k));
    trim();
  }
  explicit UPoly(std::vector<K> cs) : c(std::move(cs)) { trim(); }

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && kzero(c.back())) c.pop_back();
  }
  const K& lc() const { return c.back(); }
  K at(size_t i) const { return i < c.size() ? c[i] : (c.empty() ? K{} : zero_like(c[0])); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
      if (i < a.c.size() && i < b.c.size())
        r.c[i] = a.c[i] + b.c[i];
      else if (i < a.c.size())
        r.c[i] = a.c[i];
      else
        r.c[i] = b.c[i];
    }
    r.trim();
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
      if (i < a.c.size() && i < b.c.size())
        r.c[i] = a.c[i] - b.c[i];
      else if (i < a.c.size())
        r.c[i] = a.c[i];
      else
        r.c[i] = K{} - b.c[i];
    }
    r.trim();
    return r;
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& k : r.c) k = K{} - k;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    UPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c[0]));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (kzero(a.c[i])) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend UPoly operator*(const K& k, const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c) x = k * x;
    r.trim();
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  K eval_k(const K& x) const {
    if (c.empty()) return zero_like(x);
    K acc = zero_like(x);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  UPoly derivative() const {
    UPoly r;
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(kmul_si(c[i], static_cast<long>(i)));
    r.trim();
    return r;
  }

  // substitute x <- g
  UPoly compose(const UPoly& g) const {
    UPoly acc;
    for (size_t i = c.size(); i-- > 0;) {
      acc = acc * g;
      acc = acc + UPoly(c[i]);
    }
    return acc;
  }
};

template <class K>
std::pair<UPoly<K>, UPoly<K>> upoly_divrem(const UPoly<K>& a, const UPoly<K>& b) {
  if (b.is_zero()) throw invalid_argument_error("polynomial division by zero");
  UPoly<K> q, r = a;
  if (a.deg() < b.deg()) return {q, r};
  q.c.assign(a.deg() - b.deg() + 1, zero_like(b.lc()));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    K f = r.lc() / b.lc();
    int s = r.deg() - b.deg();
    q.c[s] = f;
    // r -= f * x^s * b, with the leading term cancelled exactly
    for (int i = 0; i <= b.deg(); ++i) r.c[s + i] = r.c[s + i] - f * b.c[i];
    r.c.pop_back();
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class K>
UPoly<K> upoly_mod(const UPoly<K>& a, const UPoly<K>& b) {
  return upoly_divrem(a, b).second;
}

// plain Euclid over a field; adequate for moderate degrees and for
// coefficient fields where the subresultant route does not apply
template <class K>
UPoly<K> upoly_gcd_monic(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = upoly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    K inv = one_like(a.lc()) / a.lc();
    a = inv * a;
  }
  return a;
}

// extended gcd: returns (g, u) with u*a = g mod b (v is not needed by callers)
template <class K>
std::pair<UPoly<K>, UPoly<K>> upoly_half_xgcd(UPoly<K> a, const UPoly<K>& m) {
  UPoly<K> r0 = m, r1 = upoly_mod(a, m);
  UPoly<K> u0, u1(one_like(m.lc()));
  while (!r1.is_zero()) {
    auto [q, r2] = upoly_divrem(r0, r1);
    UPoly<K> u2 = u0 - q * u1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return {r0, u0};
}

using QPoly = UPoly<Rational>;

inline bool kzero(const QPoly& f) { return f.is_zero(); }
inline QPoly kmul_si(const QPoly& f, long n) { return Rational(n) * f; }
inline QPoly kmul_q(const QPoly& f, const Rational& q) { return q * f; }
inline QPoly zero_like(const QPoly&) { return QPoly(); }
inline QPoly one_like(const QPoly&) { return QPoly(Rational(1)); }

// Q-specific machinery (integer normal forms keep coefficient growth in check)
struct IntPoly {
  std::vector<BigInt> c;
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

IntPoly to_int_primitive(const QPoly& f);          // positive leading coefficient
QPoly to_qpoly(const IntPoly& f);
BigInt int_content(const IntPoly& f);

QPoly qpoly_gcd(const QPoly& a, const QPoly& b);   // monic gcd via primitive PRS
Rational qpoly_resultant(const QPoly& a, const QPoly& b);

// 2^k as an exact rational, k may be negative
Rational rational_pow2(long k);
bool qpoly_divides(const QPoly& a, const QPoly& b);  // a | b
QPoly qpoly_exact_div(const QPoly& b, const QPoly& a);

// Yun decomposition: result[i] = (factor, multiplicity), factors squarefree,
// pairwise coprime, product^multiplicity = f up to a constant
std::vector<std::pair<QPoly, int>> yun_squarefree(const QPoly& f);
QPoly squarefree_part(const QPoly& f);

// all rational roots together with the deflated cofactor
std::vector<Rational> rational_roots(QPoly& f);

// Lagrange interpolation through (xs[i], ys[i]), xs distinct
QPoly qpoly_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

ComplexApprox qpoly_eval_ca(const QPoly& f, const ComplexApprox& x);

std::string qpoly_str(const QPoly& f, const std::string& var = "t");

}  // namespace bifib
