#pragma once

#include <optional>
#include <type_traits>

#include "bifib/algebraic.hpp"
#include "bifib/cubic.hpp"
#include "bifib/ratfunc.hpp"
#include "bifib/surface.hpp"

namespace bifib {

// ---------------------------------------------------------------------------
// short Weierstrass curves y^2 = x^3 + A x + B over a coefficient field K;
// the same code runs over the rationals, the rational function field, and
// complex approximations (where every zero test is a tolerance test)

template <class K>
struct EPoint {
  bool infinity = true;
  K x{}, y{};

  static EPoint at_infinity() { return EPoint(); }
  static EPoint affine(K xx, K yy) {
    EPoint p;
    p.infinity = false;
    p.x = std::move(xx);
    p.y = std::move(yy);
    return p;
  }
};

template <class K>
struct ShortCurve {
  K A{}, B{};

  K disc() const {
    K four_a3 = kmul_si(A * A * A, 4);
    K twenty7_b2 = kmul_si(B * B, 27);
    return kmul_si(four_a3 + twenty7_b2, -16);
  }
};

template <class K>
bool on_curve(const ShortCurve<K>& E, const EPoint<K>& P) {
  if (P.infinity) return true;
  return kzero(P.y * P.y - (P.x * P.x * P.x + E.A * P.x + E.B));
}

template <class K>
EPoint<K> ec_neg(const EPoint<K>& P) {
  if (P.infinity) return P;
  return EPoint<K>::affine(P.x, K{} - P.y);
}

template <class K>
bool ec_equal(const EPoint<K>& P, const EPoint<K>& Q) {
  if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
  return kzero(P.x - Q.x) && kzero(P.y - Q.y);
}

// chord-tangent addition without membership checks; callers guarantee the
// inputs lie on the curve
template <class K>
EPoint<K> ec_add_unchecked(const ShortCurve<K>& E, const EPoint<K>& P, const EPoint<K>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  K lam;
  if (kzero(P.x - Q.x)) {
    if (kzero(P.y + Q.y)) return EPoint<K>();
    lam = (kmul_si(P.x * P.x, 3) + E.A) / kmul_si(P.y, 2);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  K x3 = lam * lam - P.x - Q.x;
  K y3 = lam * (P.x - x3) - P.y;
  return EPoint<K>::affine(std::move(x3), std::move(y3));
}

template <class K>
EPoint<K> ec_add(const ShortCurve<K>& E, const EPoint<K>& P, const EPoint<K>& Q) {
  if (!on_curve(E, P) || !on_curve(E, Q))
    throw invalid_argument_error("point is not on the curve");
  return ec_add_unchecked(E, P, Q);
}

template <class K>
EPoint<K> scalar_mul(const ShortCurve<K>& E, long m, EPoint<K> P) {
  if (!on_curve(E, P)) throw invalid_argument_error("point is not on the curve");
  if (m == 0 || P.infinity) return EPoint<K>();
  if (m < 0) {
    P = ec_neg(P);
    m = -m;
  }
  EPoint<K> acc;
  while (m) {
    if (m & 1) acc = ec_add_unchecked(E, acc, P);
    m >>= 1;
    if (m) P = ec_add_unchecked(E, P, P);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// division polynomials in their x-only normal form: psi_m = table[m](x) for
// odd m and psi_m = y * table[m](x) for even m; m P = 0 exactly when psi_m
// vanishes at P.  The coefficient ring only needs 2 to be invertible, so the
// table also works over polynomial coefficients.

template <class K>
UPoly<K> upoly_scale_q(const UPoly<K>& f, const Rational& q) {
  UPoly<K> r = f;
  for (auto& k : r.c) k = kmul_q(k, q);
  r.trim();
  return r;
}

template <class K>
std::vector<UPoly<K>> psi_hat_table(const K& A, const K& B, int n) {
  using P = UPoly<K>;
  const K k0 = zero_like(A), k1 = one_like(A);
  auto mk = [](std::vector<K> cs) { return P(std::move(cs)); };
  std::vector<P> psi(static_cast<size_t>(std::max(n, 4)) + 1);
  psi[0] = P();
  psi[1] = P(k1);
  psi[2] = P(kmul_si(k1, 2));
  psi[3] = mk({K{} - A * A, kmul_si(B, 12), kmul_si(A, 6), k0, kmul_si(k1, 3)});
  psi[4] = kmul_si(k1, 4) *
           mk({K{} - kmul_si(B * B, 8) - A * A * A, K{} - kmul_si(A * B, 4),
               K{} - kmul_si(A * A, 5), kmul_si(B, 20), kmul_si(A, 5), k0, k1});
  P f = mk({B, A, k0, k1});
  P f2 = f * f;
  for (int m = 5; m <= n; ++m) {
    size_t k = static_cast<size_t>(m) / 2;
    if (m & 1) {
      P t1 = psi[k + 2] * psi[k] * psi[k] * psi[k];
      P t2 = psi[k - 1] * psi[k + 1] * psi[k + 1] * psi[k + 1];
      psi[static_cast<size_t>(m)] = (k % 2 == 0) ? f2 * t1 - t2 : t1 - f2 * t2;
    } else {
      P inner = psi[k + 2] * psi[k - 1] * psi[k - 1] - psi[k - 2] * psi[k + 1] * psi[k + 1];
      psi[static_cast<size_t>(m)] = upoly_scale_q(psi[k] * inner, Rational(1, 2));
    }
  }
  return psi;
}

template <class K>
bool is_m_torsion(const std::vector<UPoly<K>>& psi, const EPoint<K>& P, int m) {
  if (P.infinity) return true;
  if (m % 2 == 0 && kzero(P.y)) return true;
  return kzero(psi[static_cast<size_t>(m)].eval_k(P.x));
}

// order of P in the group, if at most m_max; computed twice, by repeated
// addition and by division polynomials, and the two must agree
template <class K>
std::optional<int> torsion_order(const ShortCurve<K>& E, const EPoint<K>& P, int m_max) {
  if constexpr (std::is_same_v<K, ComplexApprox>)
    throw unsupported_domain_error("torsion decisions need an exact coefficient domain");
  if (m_max < 1) throw invalid_argument_error("torsion search bound must be positive");
  if (!on_curve(E, P)) throw invalid_argument_error("point is not on the curve");
  if (P.infinity) return 1;
  int add_order = 0;
  EPoint<K> Q = P;
  for (int m = 1; m <= m_max; ++m) {
    if (Q.infinity) {
      add_order = m;
      break;
    }
    Q = ec_add_unchecked(E, Q, P);
  }
  auto psi = psi_hat_table(E.A, E.B, std::max(m_max, 2));
  int psi_order = 0;
  for (int m = 2; m <= m_max; ++m)
    if (is_m_torsion(psi, P, m)) {
      psi_order = m;
      break;
    }
  if (add_order != psi_order)
    throw internal_consistency_error("torsion order criteria disagree");
  if (add_order == 0) return std::nullopt;
  return add_order;
}

// ---------------------------------------------------------------------------
// small dense matrices over K

template <class K>
using Mat3 = std::array<std::array<K, 3>, 3>;

template <class K>
K mat3_det(const Mat3<K>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class K>
Mat3<K> mat3_mul(const Mat3<K>& a, const Mat3<K>& b) {
  Mat3<K> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      K s{};
      for (int k = 0; k < 3; ++k) s = s + a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

template <class K>
std::array<K, 3> mat3_apply(const Mat3<K>& m, const std::array<K, 3>& v) {
  std::array<K, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

template <class K>
Mat3<K> mat3_inverse(const Mat3<K>& m) {
  K det = mat3_det(m);
  if (kzero(det)) throw internal_consistency_error("singular coordinate change");
  Mat3<K> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3;  // cofactor transpose
      int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
    }
  return r;
}

// ---------------------------------------------------------------------------
// reduction of a smooth-at-the-marked-point plane cubic to short Weierstrass
// form, with the marked point sent to infinity.  The plane is moved so the
// marked point sits at (0:0:1) with tangent {X1 = 0}; projecting from the
// third intersection of that tangent folds the cubic to w^2 = quartic in the
// slope s, the quartic has the automatic root s = 0, and inverting s turns it
// into a cubic in x.  A flex (third intersection equal to the marked point)
// instead goes to Weierstrass form by swapping the tangent to the line at
// infinity.

template <class K>
struct NagellModel {
  ShortCurve<K> E;
  bool flex = false;
  Mat3<K> M{}, Minv{};   // original coordinates = M * normalized coordinates
  UPoly<K> q2, q1, q0;   // residual conic q2(s) u^2 + q1(s) u + q0(s) (non-flex)
  K g0{}, g1{};          // low coefficients of (q1^2 - 4 q2 q0)/s
  K r3{}, r2{}, p11{}, p01{}, p02{};  // flex branch data

  EPoint<K> to_curve(const std::array<K, 3>& P) const {
    std::array<K, 3> Q = mat3_apply(Minv, P);
    if (flex) {
      // the swapped line at infinity meets the cubic only at the marked point
      if (kzero(Q[2])) return EPoint<K>();
      K X = Q[0] / Q[2], Y = Q[1] / Q[2];
      K x = r3 * X + kmul_q(r2, Rational(1, 3));
      K y = r3 * (Y + (p11 * X + p01) / kmul_si(p02, 2));
      return EPoint<K>::affine(std::move(x), std::move(y));
    }
    if (kzero(Q[2]))
      throw invalid_argument_error("point is in a degenerate position for this model");
    K u = Q[0] / Q[2], v = Q[1] / Q[2];
    if (kzero(v)) {
      if (kzero(u)) return EPoint<K>();  // the marked point
      throw invalid_argument_error("point is not on the cubic");
    }
    K w = kmul_si(q2.eval_k(v) * u, 2) + q1.eval_k(v);
    K x = g0 / v + kmul_q(g1, Rational(1, 3));
    K y = g0 * w / (v * v);
    return EPoint<K>::affine(std::move(x), std::move(y));
  }

  std::array<K, 3> from_curve(const EPoint<K>& p) const {
    if (flex) {
      if (p.infinity) return {M[0][1], M[1][1], M[2][1]};
      K X = (p.x - kmul_q(r2, Rational(1, 3))) / r3;
      K Y = p.y / r3 - (p11 * X + p01) / kmul_si(p02, 2);
      return mat3_apply(M, {X, Y, one_like(r3)});
    }
    if (p.infinity) return {M[0][2], M[1][2], M[2][2]};
    K xs = p.x - kmul_q(g1, Rational(1, 3));
    if (kzero(xs))
      throw invalid_argument_error("point is in a degenerate position for this model");
    K s = g0 / xs;
    K den = kmul_si(q2.eval_k(s), 2);
    if (kzero(den))
      throw invalid_argument_error("point is in a degenerate position for this model");
    K w = p.y * s * s / g0;
    K u = (w - q1.eval_k(s)) / den;
    return mat3_apply(M, {u, s, one_like(s)});
  }
};

template <class K>
NagellModel<K> nagell_transform(const TernForm<K>& C, const std::array<K, 3>& O) {
  if (C.deg != 3) throw invalid_argument_error("expected a ternary cubic");
  if (!kzero(C.eval(O[0], O[1], O[2])))
    throw invalid_argument_error("marked point is not on the cubic");
  std::array<K, 3> d{};
  for (int v = 0; v < 3; ++v) d[v] = C.partial(v).eval(O[0], O[1], O[2]);
  if (kzero(d[0]) && kzero(d[1]) && kzero(d[2]))
    throw marked_point_singular_error("cubic is singular at the marked point");

  // substitution frame: columns are the images of the basis points, so the
  // transformed cubic has the marked point at (0:0:1) and tangent {X1 = 0};
  // the third column is the marked point, the second leaves the tangent, and
  // the first spans the tangent together with the marked point.  Division
  // free, so polynomial input stays polynomial.
  int dm = kzero(d[0]) ? (kzero(d[1]) ? 2 : 1) : 0;
  const K kone = one_like(d[dm]);
  Mat3<K> M1{};
  for (int r = 0; r < 3; ++r) {
    M1[r][1] = (r == dm) ? kone : K{};
    M1[r][2] = O[r];
  }
  bool framed = false;
  for (int i = 0; i < 3 && !framed; ++i) {
    if (i == dm) continue;
    for (int r = 0; r < 3; ++r) M1[r][0] = K{};
    M1[i][0] = d[dm];
    M1[dm][0] = K{} - d[i];
    if (!kzero(mat3_det(M1))) framed = true;
  }
  if (!framed) throw internal_consistency_error("could not frame the marked point");

  TernForm<K> C1 = C.transform(M1);
  if (kzero(C1.at(0, 1)) || !kzero(C1.at(1, 0)) || !kzero(C1.at(0, 0)))
    throw internal_consistency_error("marked point normalization failed");

  K a20 = C1.at(2, 0), a30 = C1.at(3, 0);
  if (kzero(a20) && kzero(a30))
    throw reducible_fiber_error("the tangent at the marked point lies on the cubic");

  NagellModel<K> mod;
  if (kzero(a20)) {
    // flex: swap the tangent with the line at infinity
    mod.flex = true;
    Mat3<K> M2{};
    M2[0][0] = kone;
    M2[1][2] = kone;
    M2[2][1] = kone;
    TernForm<K> C2 = C1.transform(M2);
    mod.M = mat3_mul(M1, M2);
    if (!kzero(C2.at(2, 1)) || !kzero(C2.at(1, 2)) || !kzero(C2.at(0, 3)))
      throw internal_consistency_error("flex normalization failed");
    K p30 = C2.at(3, 0), p20 = C2.at(2, 0), p10 = C2.at(1, 0), p00 = C2.at(0, 0);
    mod.p11 = C2.at(1, 1);
    mod.p01 = C2.at(0, 1);
    mod.p02 = C2.at(0, 2);
    if (kzero(mod.p02) || kzero(p30))
      throw internal_consistency_error("flex normalization failed");
    K i02 = kone / mod.p02;
    mod.r3 = (K{} - p30) * i02;
    mod.r2 = (kmul_q(mod.p11 * mod.p11, Rational(1, 4)) * i02 - p20) * i02;
    K r1 = (kmul_q(mod.p11 * mod.p01, Rational(1, 2)) * i02 - p10) * i02;
    K r0 = (kmul_q(mod.p01 * mod.p01, Rational(1, 4)) * i02 - p00) * i02;
    mod.E.A = mod.r3 * r1 - kmul_q(mod.r2 * mod.r2, Rational(1, 3));
    mod.E.B = mod.r3 * mod.r3 * r0 - kmul_q(mod.r2 * mod.r3 * r1, Rational(1, 3)) +
              kmul_q(mod.r2 * mod.r2 * mod.r2, Rational(2, 27));
  } else {
    // send the third tangent intersection to (1:0:0), keeping the marked
    // point and the tangent
    Mat3<K> M2{};
    M2[0][0] = a20;
    M2[1][1] = kone;
    M2[2][0] = K{} - a30;
    M2[2][2] = kone;
    TernForm<K> C2 = C1.transform(M2);
    mod.M = mat3_mul(M1, M2);
    if (!kzero(C2.at(3, 0)) || !kzero(C2.at(1, 0)) || !kzero(C2.at(0, 0)))
      throw internal_consistency_error("projection normalization failed");
    mod.q2 = UPoly<K>(std::vector<K>{C2.at(2, 0), C2.at(2, 1)});
    mod.q1 = UPoly<K>(std::vector<K>{K{}, C2.at(1, 1), C2.at(1, 2)});
    mod.q0 = UPoly<K>(std::vector<K>{K{}, C2.at(0, 1), C2.at(0, 2), C2.at(0, 3)});
    UPoly<K> D = mod.q1 * mod.q1 - kmul_si(kone, 4) * (mod.q2 * mod.q0);
    if (!kzero(D.at(0)))
      throw internal_consistency_error("projection discriminant misses its forced root");
    mod.g0 = D.at(1);
    mod.g1 = D.at(2);
    K g2 = D.at(3), g3 = D.at(4);
    if (kzero(mod.g0))
      throw internal_consistency_error("projection discriminant degenerates");
    mod.E.A = mod.g0 * g2 - kmul_q(mod.g1 * mod.g1, Rational(1, 3));
    mod.E.B = mod.g0 * mod.g0 * g3 - kmul_q(mod.g0 * mod.g1 * g2, Rational(1, 3)) +
              kmul_q(mod.g1 * mod.g1 * mod.g1, Rational(2, 27));
  }
  mod.Minv = mat3_inverse(mod.M);
  return mod;
}

// ---------------------------------------------------------------------------
// pencil fibers over the rational function field

struct FiberFamily {
  int axis = 1;
  NagellModel<RatFunc> model;
  EPoint<RatFunc> sigma;  // image of the disjoint section
  RatFunc u;              // twist with (x, y) -> (u^2 x, u^3 y) making the model integral
  QPoly Ai, Bi;           // y^2 = x^3 + Ai(t) x + Bi(t) with small polynomial coefficients
};

FiberFamily make_fiber_family(const ResidualCubicFamily& fam);

RatFunc j_invariant(const ShortCurve<RatFunc>& E);

// fiber at a rational parameter where the family model specializes
ShortCurve<Rational> specialize_curve(const FiberFamily& F, const Rational& t0);
EPoint<Rational> specialize_section(const FiberFamily& F, const Rational& t0);

struct SingularFiberSet {
  QPoly disc;  // squarefree integer-primitive plane-cubic discriminant of the pencil
  std::vector<AlgebraicNumber> parameters;
  bool infinity_singular = false;
  int count = 0;
};

// exact singular locus of the pencil: the true ternary-cubic discriminant is
// the quotient of the elimination determinant by its structural minor
SingularFiberSet singular_fibers(const ResidualCubicFamily& fam);

// polynomial whose roots are the parameters where m * sigma(t) hits the zero
// section, with factors at singular or non-specializing fibers removed
QPoly torsion_value_polynomial(const FiberFamily& F, int m);

// the same with every proper-divisor torsion value stripped, so roots carry
// exact order m
QPoly exact_order_value_polynomial(const FiberFamily& F, int m);

}  // namespace bifib
