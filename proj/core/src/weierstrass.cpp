#include "bifib/weierstrass.hpp"

namespace bifib {

namespace {

// largest S with S^w dividing P, read off the squarefree decomposition
QPoly power_content(const QPoly& P, int w) {
  QPoly out(Rational(1));
  if (P.deg() < w) return out;
  for (const auto& [f, mult] : yun_squarefree(P))
    for (int k = 0; k < mult / w; ++k) out = out * f;
  return out;
}

QPoly qpoly_pow(const QPoly& f, int n) {
  QPoly r(Rational(1));
  for (int i = 0; i < n; ++i) r = r * f;
  return r;
}

}  // namespace

FiberFamily make_fiber_family(const ResidualCubicFamily& fam) {
  TernForm<RatFunc> C(3);
  for (size_t i = 0; i < C.c.size(); ++i) C.c[i] = RatFunc(fam.main.c[i]);
  std::array<RatFunc, 3> O, sig;
  for (int i = 0; i < 3; ++i) {
    O[i] = RatFunc(fam.zero_point[i]);
    sig[i] = RatFunc(fam.section_point[i]);
  }

  FiberFamily F;
  F.axis = fam.axis;
  F.model = nagell_transform(C, O);
  F.sigma = F.model.to_curve(sig);

  const RatFunc& A = F.model.E.A;
  const RatFunc& B = F.model.E.B;
  QPoly g = qpoly_gcd(A.den, B.den);
  F.u = RatFunc(qpoly_exact_div(A.den * B.den, g));
  RatFunc u2 = F.u * F.u, u4 = u2 * u2;
  RatFunc sa = u4 * A, sb = u4 * u2 * B;
  if (sa.den.deg() != 0 || sb.den.deg() != 0)
    throw internal_consistency_error("integral rescaling left a denominator");
  F.Ai = sa.num;
  F.Bi = sb.num;

  // reduce the model: fourth and sixth power content common to the
  // coefficients comes from the twist, not from the family
  for (;;) {
    QPoly S = qpoly_gcd(power_content(F.Ai, 4), power_content(F.Bi, 6));
    if (S.deg() <= 0) break;
    F.Ai = qpoly_exact_div(F.Ai, qpoly_pow(S, 4));
    F.Bi = qpoly_exact_div(F.Bi, qpoly_pow(S, 6));
    F.u = F.u / RatFunc(S);
  }
  return F;
}

RatFunc j_invariant(const ShortCurve<RatFunc>& E) {
  RatFunc four_a3 = kmul_si(E.A * E.A * E.A, 4);
  RatFunc den = four_a3 + kmul_si(E.B * E.B, 27);
  if (kzero(den))
    throw degenerate_family_error("every fiber of the family is singular");
  return kmul_si(four_a3, 1728) / den;
}

ShortCurve<Rational> specialize_curve(const FiberFamily& F, const Rational& t0) {
  const RatFunc& A = F.model.E.A;
  const RatFunc& B = F.model.E.B;
  if (!A.defined_at(t0) || !B.defined_at(t0))
    throw invalid_argument_error("model coefficients have a pole at this parameter");
  ShortCurve<Rational> E{A.eval(t0), B.eval(t0)};
  if (E.disc() == 0) throw singular_fiber_error("fiber is singular at this parameter");
  return E;
}

EPoint<Rational> specialize_section(const FiberFamily& F, const Rational& t0) {
  specialize_curve(F, t0);
  if (F.sigma.infinity) return EPoint<Rational>::at_infinity();
  if (!F.sigma.x.defined_at(t0)) {
    // on a smooth fiber a pole of x forces a pole of y and the point at zero
    if (F.sigma.y.defined_at(t0))
      throw internal_consistency_error("section has a lone pole in x");
    return EPoint<Rational>::at_infinity();
  }
  if (!F.sigma.y.defined_at(t0))
    throw internal_consistency_error("section has a lone pole in y");
  return EPoint<Rational>::affine(F.sigma.x.eval(t0), F.sigma.y.eval(t0));
}

}  // namespace bifib
