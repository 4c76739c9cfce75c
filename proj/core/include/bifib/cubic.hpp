#pragma once

#include <array>
#include <vector>

#include "bifib/errors.hpp"
#include "bifib/poly.hpp"
#include "bifib/unipoly.hpp"

namespace bifib {

// dense homogeneous form of degree d in three variables (u0, u1, u2);
// coefficients indexed by exponent pairs (i, j) with k = d - i - j, ordered
// lexicographically with u0 > u1 > u2
inline int tern_size(int deg) { return (deg + 1) * (deg + 2) / 2; }

inline int tern_index(int deg, int i, int j) {
  // monomials with first exponent > i come first; within fixed i, descending j
  int before = 0;
  for (int a = deg; a > i; --a) before += deg - a + 1;
  return before + (deg - i - j);
}

template <typename K>
struct TernForm {
  int deg = 0;
  std::vector<K> c;  // size tern_size(deg)

  TernForm() : deg(0), c(1, K{}) {}
  explicit TernForm(int d) : deg(d), c(tern_size(d), K{}) {}

  K& at(int i, int j) { return c[tern_index(deg, i, j)]; }
  const K& at(int i, int j) const { return c[tern_index(deg, i, j)]; }

  bool is_zero() const {
    for (const auto& k : c)
      if (!kzero(k)) return false;
    return true;
  }

  K eval(const K& x, const K& y, const K& z) const {
    K acc{};
    int idx = 0;
    for (int i = deg; i >= 0; --i)
      for (int j = deg - i; j >= 0; --j, ++idx) {
        K term = c[idx];
        for (int a = 0; a < i; ++a) term = term * x;
        for (int a = 0; a < j; ++a) term = term * y;
        for (int a = 0; a < deg - i - j; ++a) term = term * z;
        acc = acc + term;
      }
    return acc;
  }

  TernForm partial(int v) const {
    if (deg == 0) return TernForm(0);
    TernForm r(deg - 1);
    int idx = 0;
    for (int i = deg; i >= 0; --i)
      for (int j = deg - i; j >= 0; --j, ++idx) {
        int k = deg - i - j;
        int e[3] = {i, j, k};
        if (e[v] == 0) continue;
        int ii = i - (v == 0), jj = j - (v == 1);
        r.at(ii, jj) = r.at(ii, jj) + kmul_si(c[idx], e[v]);
      }
    return r;
  }

  friend TernForm operator+(const TernForm& a, const TernForm& b) {
    TernForm r(a.deg);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }

  friend TernForm operator*(const TernForm& a, const TernForm& b) {
    TernForm r(a.deg + b.deg);
    int ia = 0;
    for (int i = a.deg; i >= 0; --i)
      for (int j = a.deg - i; j >= 0; --j, ++ia) {
        if (kzero(a.c[ia])) continue;
        int ib = 0;
        for (int p = b.deg; p >= 0; --p)
          for (int q = b.deg - p; q >= 0; --q, ++ib) {
            if (kzero(b.c[ib])) continue;
            K& slot = r.at(i + p, j + q);
            slot = slot + a.c[ia] * b.c[ib];
          }
      }
    return r;
  }

  friend TernForm operator*(const K& k, const TernForm& a) {
    TernForm r(a.deg);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = k * a.c[i];
    return r;
  }

  // substitute u_i -> sum_j m[i][j] * u_j
  TernForm transform(const std::array<std::array<K, 3>, 3>& m) const {
    std::array<TernForm, 3> lin;
    for (int v = 0; v < 3; ++v) {
      lin[v] = TernForm(1);
      lin[v].at(1, 0) = m[v][0];
      lin[v].at(0, 1) = m[v][1];
      lin[v].at(0, 0) = m[v][2];
    }
    TernForm r(deg);
    int idx = 0;
    for (int i = deg; i >= 0; --i)
      for (int j = deg - i; j >= 0; --j, ++idx) {
        if (kzero(c[idx])) continue;
        TernForm t(0);
        t.c[0] = c[idx];
        for (int a = 0; a < i; ++a) t = t * lin[0];
        for (int a = 0; a < j; ++a) t = t * lin[1];
        for (int a = 0; a < deg - i - j; ++a) t = t * lin[2];
        // t now has degree == deg
        for (size_t s = 0; s < r.c.size(); ++s) r.c[s] = r.c[s] + t.c[s];
      }
    return r;
  }
};

// evaluate a polynomial-coefficient form at a parameter value
TernForm<Rational> specialize(const TernForm<QPoly>& f, const Rational& t);
TernForm<ComplexApprox> specialize_ca(const TernForm<QPoly>& f, const ComplexApprox& t);

// dense three-variable polynomial copy
MultiPoly to_multipoly(const TernForm<Rational>& f);

// small unimodular matrix, product of unit triangular factors
std::array<std::array<Rational, 3>, 3> unimodular_shear3(uint64_t seed);

}  // namespace bifib
