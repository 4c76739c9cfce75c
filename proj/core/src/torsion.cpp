#include <algorithm>

#include "bifib/elimination.hpp"
#include "bifib/weierstrass.hpp"

namespace bifib {

namespace {

// determinants of the elimination matrix of the three partial quadrics and of
// its structural minor, interpolated as polynomials in the pencil parameter;
// valid because the matrix layout is fixed, the entries are polynomial in t,
// and the family is cleared to integer coefficients up front so every sample
// is a value of one and the same polynomial
std::pair<QPoly, QPoly> interp_elim_dets(const TernForm<QPoly>& fam) {
  TernForm<QPoly> f = fam;
  BigInt den(1);
  for (const auto& q : f.c)
    for (const auto& r : q.c) den = lcm(den, denominator(r));
  if (den != 1)
    for (auto& q : f.c) q = Rational(den) * q;
  int dmax = 0;
  for (const auto& q : f.c) dmax = std::max(dmax, q.deg());
  int samples = 15 * dmax + 1;  // 15 rows, entries of coefficient degree
  std::vector<Rational> xs, yfull, yminor;
  for (int k = 0; k < samples; ++k) {
    Rational t(k);
    TernForm<Rational> c = specialize(f, t);
    std::vector<MultiPoly> forms;
    for (int v = 0; v < 3; ++v) forms.push_back(to_multipoly(c.partial(v)));
    xs.push_back(t);
    yfull.push_back(Rational(det_bareiss_int(macaulay_matrix(forms, {2, 2, 2}, 3))));
    yminor.push_back(Rational(det_bareiss_int(macaulay_minor(forms, {2, 2, 2}, 3))));
  }
  return {qpoly_interpolate(xs, yfull), qpoly_interpolate(xs, yminor)};
}

// true plane-cubic discriminant of the family, up to a nonzero constant: the
// elimination determinant factors as resultant times its structural minor, so
// the quotient removes every spurious factor the proxy would carry.  The
// discriminant is invariant under determinant-one coordinate changes, so a
// vanishing minor is escaped by shearing.
QPoly family_discriminant(const TernForm<QPoly>& fam) {
  for (int sh = 0; sh <= 4; ++sh) {
    TernForm<QPoly> f = fam;
    if (sh > 0) {
      auto S = unimodular_shear3(0x5e9f1be5ULL + sh);
      std::array<std::array<QPoly, 3>, 3> T;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = QPoly(S[i][j]);
      f = fam.transform(T);
    }
    auto [full, minor] = interp_elim_dets(f);
    if (minor.is_zero()) continue;
    if (full.is_zero())
      throw degenerate_family_error("every fiber of the pencil is singular");
    if (!qpoly_divides(minor, full))
      throw internal_consistency_error("elimination determinant is not a multiple of its minor");
    return qpoly_exact_div(full, minor);
  }
  throw degenerate_family_error("pencil discriminant collapsed in every frame");
}

}  // namespace

SingularFiberSet singular_fibers(const ResidualCubicFamily& fam) {
  QPoly disc = family_discriminant(fam.main);
  QPoly disc_inf = family_discriminant(fam.inf_chart);
  SingularFiberSet out;
  out.disc = to_qpoly(to_int_primitive(squarefree_part(disc)));
  if (out.disc.deg() > 0) out.parameters = AlgebraicNumber::roots_of(out.disc);
  out.infinity_singular = disc_inf.eval_k(Rational(0)) == 0;
  out.count = static_cast<int>(out.parameters.size()) + (out.infinity_singular ? 1 : 0);
  return out;
}

namespace {

// strip from f every factor shared with g, to any multiplicity
QPoly strip_common(QPoly f, const QPoly& g) {
  QPoly h = qpoly_gcd(f, g);
  while (h.deg() > 0) {
    f = qpoly_exact_div(f, h);
    h = qpoly_gcd(f, g);
  }
  return f;
}

}  // namespace

QPoly torsion_value_polynomial(const FiberFamily& F, int m) {
  if (m < 1) throw invalid_argument_error("order must be positive");
  if (F.sigma.infinity)
    throw section_torsion_error("the section is the zero section");
  const RatFunc& x = F.sigma.x;
  const RatFunc& y = F.sigma.y;
  if (m % 2 == 0 && kzero(y))
    throw section_torsion_error("the section is two-torsion in the family");

  QPoly T;
  if (m == 1) {
    T = x.den;  // the section meets zero exactly at the poles of x
  } else {
    // evaluate the division polynomial for the integral model at u^2 x,
    // homogenized so no rational-function arithmetic is needed
    RatFunc xhat = F.u * F.u * x;
    auto psi = psi_hat_table<QPoly>(F.Ai, F.Bi, std::max(m, 4));
    const UPoly<QPoly>& g = psi[static_cast<size_t>(m)];
    int d = g.deg();
    if (d < 0) throw internal_consistency_error("empty division polynomial");
    std::vector<QPoly> pp(static_cast<size_t>(d) + 1), qp(static_cast<size_t>(d) + 1);
    pp[0] = qp[0] = QPoly(Rational(1));
    for (int i = 1; i <= d; ++i) {
      pp[static_cast<size_t>(i)] = pp[static_cast<size_t>(i - 1)] * xhat.num;
      qp[static_cast<size_t>(i)] = qp[static_cast<size_t>(i - 1)] * xhat.den;
    }
    QPoly N;
    for (int i = 0; i <= d; ++i)
      N = N + g.at(static_cast<size_t>(i)) * pp[static_cast<size_t>(i)] *
                  qp[static_cast<size_t>(d - i)];
    if (N.is_zero())
      throw section_torsion_error("the section is torsion in the family");
    T = N;
    if (m % 2 == 0) T = T * y.num;
    T = T * x.den;  // parameters where the section itself meets zero
  }

  // remove parameters where the fiber is singular or the model does not
  // specialize: the integral-model discriminant, the coefficient poles, and
  // the twist zeros and poles together cover every such place
  QPoly four_a3 = Rational(4) * (F.Ai * F.Ai * F.Ai);
  QPoly delta_i = four_a3 + Rational(27) * (F.Bi * F.Bi);
  if (delta_i.is_zero())
    throw degenerate_family_error("every fiber of the family is singular");
  QPoly guard = delta_i * F.model.E.A.den * F.model.E.B.den * F.u.num * F.u.den;
  T = strip_common(T, squarefree_part(guard));
  return to_qpoly(to_int_primitive(T));
}

QPoly exact_order_value_polynomial(const FiberFamily& F, int m) {
  QPoly T = torsion_value_polynomial(F, m);
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    T = strip_common(T, torsion_value_polynomial(F, d));
  }
  return to_qpoly(to_int_primitive(T));
}

}  // namespace bifib
