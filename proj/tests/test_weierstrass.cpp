#include <doctest.h>

#include "bifib/elimination.hpp"
#include "bifib/rng.hpp"
#include "bifib/weierstrass.hpp"

using namespace bifib;

namespace {

EPoint<Rational> pt(long x, long y) { return EPoint<Rational>::affine(Rational(x), Rational(y)); }

// the curve y^2 = x^3 + A x + B through two prescribed affine points
ShortCurve<Rational> curve_through(const Rational& x0, const Rational& y0, const Rational& x1,
                                   const Rational& y1) {
  Rational c0 = y0 * y0 - x0 * x0 * x0;
  Rational c1 = y1 * y1 - x1 * x1 * x1;
  Rational A = (c0 - c1) / (x0 - x1);
  return {A, c0 - A * x0};
}

// plane model Y^2 Z = X^3 + A X Z^2 + B Z^3 as a ternary cubic
TernForm<Rational> plane_weierstrass(const Rational& A, const Rational& B) {
  TernForm<Rational> C(3);
  C.c[static_cast<size_t>(tern_index(3, 0, 2))] = Rational(1);
  C.c[static_cast<size_t>(tern_index(3, 3, 0))] = Rational(-1);
  C.c[static_cast<size_t>(tern_index(3, 1, 0))] = -A;
  C.c[static_cast<size_t>(tern_index(3, 0, 0))] = -B;
  return C;
}

Rational j_of(const Rational& A, const Rational& B) {
  Rational f = Rational(4) * A * A * A;
  return Rational(1728) * f / (f + Rational(27) * B * B);
}

std::array<Rational, 3> plane_point(const EPoint<Rational>& p) {
  return {p.x, p.y, Rational(1)};
}

// the cubic pencil x^3 + y^3 + z^3 - 3 t xyz with its base flexes as marked
// points; every member passes through them, and the fiber degenerates exactly
// at t^3 = 1 and at infinity
ResidualCubicFamily hesse_family() {
  QPoly one(Rational(1)), zero;
  QPoly tvar(std::vector<Rational>{Rational(0), Rational(1)});
  ResidualCubicFamily fam;
  fam.axis = 1;
  fam.main = TernForm<QPoly>(3);
  fam.main.c[static_cast<size_t>(tern_index(3, 3, 0))] = one;
  fam.main.c[static_cast<size_t>(tern_index(3, 0, 3))] = one;
  fam.main.c[static_cast<size_t>(tern_index(3, 0, 0))] = one;
  fam.main.c[static_cast<size_t>(tern_index(3, 1, 1))] = Rational(-3) * tvar;
  fam.inf_chart = TernForm<QPoly>(3);
  fam.inf_chart.c[static_cast<size_t>(tern_index(3, 3, 0))] = tvar;
  fam.inf_chart.c[static_cast<size_t>(tern_index(3, 0, 3))] = tvar;
  fam.inf_chart.c[static_cast<size_t>(tern_index(3, 0, 0))] = tvar;
  fam.inf_chart.c[static_cast<size_t>(tern_index(3, 1, 1))] = QPoly(Rational(-3));
  fam.zero_point = {one, QPoly(Rational(-1)), zero};
  fam.section_point = {zero, one, QPoly(Rational(-1))};
  fam.zero_point_inf = fam.zero_point;
  fam.section_point_inf = fam.section_point;
  return fam;
}

const QuarticSurface& sample_surface() {
  static QuarticSurface S = build_three_line_quartic(20260818, 3);
  return S;
}

}  // namespace

TEST_CASE("group law on y^2 = x^3 + 1 matches the catalog") {
  ShortCurve<Rational> E{Rational(0), Rational(1)};
  EPoint<Rational> P = pt(2, 3);
  EPoint<Rational> S = ec_add(E, P, P);
  CHECK(!S.infinity);
  CHECK(S.x == Rational(0));
  CHECK(S.y == Rational(1));
  CHECK(scalar_mul(E, 6, P).infinity);
  CHECK(!scalar_mul(E, 3, P).infinity);
  CHECK(ec_equal(scalar_mul(E, -1, P), ec_neg(P)));
  CHECK(ec_equal(ec_add(E, scalar_mul(E, 4, P), scalar_mul(E, 2, P)), EPoint<Rational>()));

  CHECK(torsion_order(E, P, 12) == 6);
  CHECK(torsion_order(E, pt(0, 1), 12) == 3);
  CHECK(torsion_order(E, pt(0, -1), 12) == 3);
  CHECK(torsion_order(E, EPoint<Rational>(), 12) == 1);

  ShortCurve<Rational> Emx{Rational(-1), Rational(0)};
  CHECK(torsion_order(Emx, pt(-1, 0), 12) == 2);
  ShortCurve<Rational> E4{Rational(0), Rational(4)};
  CHECK(torsion_order(E4, pt(0, 2), 12) == 3);
  ShortCurve<Rational> E7{Rational(-43), Rational(166)};
  CHECK(torsion_order(E7, pt(3, 8), 12) == 7);

  ShortCurve<Rational> Em2{Rational(0), Rational(-2)};
  CHECK(!torsion_order(Em2, pt(3, 5), 30).has_value());
}

TEST_CASE("curve invariants and input validation") {
  for (long b : {1L, -2L, 5L}) {
    ShortCurve<Rational> E{Rational(0), Rational(b)};
    CHECK(E.disc() == Rational(-432) * Rational(b) * Rational(b));
  }
  ShortCurve<Rational> E{Rational(0), Rational(1)};
  CHECK_THROWS_AS(ec_add(E, pt(1, 1), pt(2, 3)), invalid_argument_error);
  CHECK_THROWS_AS(scalar_mul(E, 3, pt(5, 5)), invalid_argument_error);

  ShortCurve<ComplexApprox> Ec;
  CHECK_THROWS_AS(torsion_order(Ec, EPoint<ComplexApprox>(), 5), unsupported_domain_error);
}

TEST_CASE("division polynomial criterion agrees with repeated addition") {
  ShortCurve<Rational> E7{Rational(-43), Rational(166)};
  EPoint<Rational> P = pt(3, 8);
  auto psi = psi_hat_table(E7.A, E7.B, 10);
  for (int m = 2; m <= 10; ++m)
    CHECK(is_m_torsion(psi, P, m) == scalar_mul(E7, m, P).infinity);

  ShortCurve<Rational> Em2{Rational(0), Rational(-2)};
  EPoint<Rational> Q = pt(3, 5);
  auto psi2 = psi_hat_table(Em2.A, Em2.B, 10);
  for (int m = 2; m <= 10; ++m) {
    CHECK(!is_m_torsion(psi2, Q, m));
    CHECK(!scalar_mul(Em2, m, Q).infinity);
  }
}

TEST_CASE("chord-tangent addition is associative") {
  SplitMix64 rng(0xa55);
  int tested = 0;
  while (tested < 100) {
    Rational x0(rng.next_in(-6, 6)), y0(rng.next_in(1, 7));
    Rational x1(rng.next_in(-6, 6)), y1(rng.next_in(1, 7));
    if (x0 == x1) continue;
    ShortCurve<Rational> E = curve_through(x0, y0, x1, y1);
    if (E.disc() == 0) continue;
    EPoint<Rational> P = EPoint<Rational>::affine(x0, y0);
    EPoint<Rational> Q = EPoint<Rational>::affine(x1, y1);
    for (int k = -2; k <= 2 && tested < 100; ++k) {
      EPoint<Rational> R = ec_add_unchecked(E, scalar_mul(E, k, P), scalar_mul(E, 2, Q));
      EPoint<Rational> lhs = ec_add_unchecked(E, ec_add_unchecked(E, P, Q), R);
      EPoint<Rational> rhs = ec_add_unchecked(E, P, ec_add_unchecked(E, Q, R));
      CHECK(ec_equal(lhs, rhs));
      ++tested;
    }
  }
}

TEST_CASE("plane cubic reduction round-trips and preserves structure") {
  struct Case {
    Rational A, B;
    EPoint<Rational> marked;
    bool flex;
  };
  std::vector<Case> cases = {
      {Rational(-43), Rational(166), pt(3, 8), false},  // order 7, not a flex
      {Rational(0), Rational(4), pt(0, 2), true},       // order 3, a flex
      {Rational(0), Rational(-2), pt(3, 5), false},     // infinite order
  };
  for (const auto& cs : cases) {
    ShortCurve<Rational> E{cs.A, cs.B};
    TernForm<Rational> C = plane_weierstrass(cs.A, cs.B);
    auto model = nagell_transform(C, plane_point(cs.marked));
    CHECK(model.flex == cs.flex);
    CHECK(!(model.E.disc() == Rational(0)));
    CHECK(j_of(model.E.A, model.E.B) == j_of(cs.A, cs.B));

    // the marked point is the new zero
    CHECK(model.to_curve(plane_point(cs.marked)).infinity);
    auto back = model.from_curve(EPoint<Rational>());
    CHECK(C.eval(back[0], back[1], back[2]) == Rational(0));

    // transport points generated from the marked one and round-trip them;
    // the projection is undefined on finitely many points (the center and
    // one auxiliary line), so skip those
    auto ord_marked = torsion_order(E, cs.marked, 12);
    int transported = 0;
    for (int k = 2; k <= 8; ++k) {
      EPoint<Rational> Pk = scalar_mul(E, k, cs.marked);
      if (Pk.infinity) continue;
      EPoint<Rational> img;
      std::array<Rational, 3> pl;
      try {
        img = model.to_curve(plane_point(Pk));
        pl = model.from_curve(img);
      } catch (const invalid_argument_error&) {
        continue;
      }
      CHECK(on_curve(model.E, img));
      CHECK(C.eval(pl[0], pl[1], pl[2]) == Rational(0));
      Rational scale = pl[2];
      CHECK(!(scale == Rational(0)));
      CHECK(pl[0] / scale == Pk.x);
      CHECK(pl[1] / scale == Pk.y);
      ++transported;

      // group structure transports: order relative to the marked identity
      if (k == 2 && ord_marked.has_value())
        CHECK(torsion_order(model.E, img, 12) == ord_marked);
    }
    CHECK(transported >= 2);
  }
}

TEST_CASE("reduction flags bad markings and keeps nodal cubics singular") {
  // marked point off the cubic
  TernForm<Rational> C = plane_weierstrass(Rational(0), Rational(1));
  CHECK_THROWS_AS(nagell_transform(C, {Rational(5), Rational(5), Rational(1)}),
                  invalid_argument_error);

  // nodal cubic y^2 z = x^3 + x^2 z, marked away from the node
  TernForm<Rational> N(3);
  N.c[static_cast<size_t>(tern_index(3, 0, 2))] = Rational(1);
  N.c[static_cast<size_t>(tern_index(3, 3, 0))] = Rational(-1);
  N.c[static_cast<size_t>(tern_index(3, 2, 0))] = Rational(-1);
  CHECK_THROWS_AS(nagell_transform(N, {Rational(0), Rational(0), Rational(1)}),
                  marked_point_singular_error);
  auto model = nagell_transform(N, {Rational(-1), Rational(0), Rational(1)});
  CHECK(model.E.disc() == Rational(0));

  // a cubic containing the tangent line at the marked point splits off
  // entirely: (x + z) * (x^2 + y^2 + z^2) marked at (-1 : 0 : 1)
  TernForm<Rational> R(3);
  R.c[static_cast<size_t>(tern_index(3, 3, 0))] = Rational(1);   // x^3
  R.c[static_cast<size_t>(tern_index(3, 1, 2))] = Rational(1);   // x y^2
  R.c[static_cast<size_t>(tern_index(3, 1, 0))] = Rational(1);   // x z^2
  R.c[static_cast<size_t>(tern_index(3, 2, 0))] = Rational(1);   // x^2 z
  R.c[static_cast<size_t>(tern_index(3, 0, 2))] = Rational(1);   // y^2 z
  R.c[static_cast<size_t>(tern_index(3, 0, 0))] = Rational(1);   // z^3
  CHECK_THROWS_AS(nagell_transform(R, {Rational(-1), Rational(0), Rational(1)}),
                  reducible_fiber_error);
}

TEST_CASE("elimination determinant splits as resultant times structural minor") {
  auto mono_form = [](int i, int j, int k, long coeff) {
    MultiPoly g(3);
    Mono m;
    m.e[0] = static_cast<uint16_t>(i);
    m.e[1] = static_cast<uint16_t>(j);
    m.e[2] = static_cast<uint16_t>(k);
    g.add_term(m, Rational(coeff));
    return g;
  };

  // pure powers have resultant one: determinant equals its minor
  std::vector<MultiPoly> pure = {mono_form(2, 0, 0, 1), mono_form(0, 2, 0, 1),
                                 mono_form(0, 0, 2, 1)};
  BigInt D = det_bareiss_int(macaulay_matrix(pure, {2, 2, 2}, 3));
  BigInt Dm = det_bareiss_int(macaulay_minor(pure, {2, 2, 2}, 3));
  CHECK(D != 0);
  CHECK(D == Dm);

  // scaling all three forms by 3 scales the resultant by 3^12
  std::vector<MultiPoly> fermat = {mono_form(2, 0, 0, 3), mono_form(0, 2, 0, 3),
                                   mono_form(0, 0, 2, 3)};
  BigInt Df = det_bareiss_int(macaulay_matrix(fermat, {2, 2, 2}, 3));
  BigInt Dfm = det_bareiss_int(macaulay_minor(fermat, {2, 2, 2}, 3));
  CHECK(Dfm != 0);
  CHECK(Df == BigInt(531441) * Dfm);  // 3^12

  // partials of a nodal cubic have a common zero: resultant vanishes
  TernForm<Rational> N(3);
  N.c[static_cast<size_t>(tern_index(3, 0, 2))] = Rational(1);
  N.c[static_cast<size_t>(tern_index(3, 3, 0))] = Rational(-1);
  N.c[static_cast<size_t>(tern_index(3, 2, 0))] = Rational(-1);
  std::vector<MultiPoly> nodal;
  for (int v = 0; v < 3; ++v) nodal.push_back(to_multipoly(N.partial(v)));
  CHECK(det_bareiss_int(macaulay_matrix(nodal, {2, 2, 2}, 3)) == 0);
}

TEST_CASE("the Hesse pencil has exactly four singular members") {
  ResidualCubicFamily fam = hesse_family();
  SingularFiberSet sf = singular_fibers(fam);
  CHECK(sf.infinity_singular);
  CHECK(sf.count == 4);
  CHECK(sf.parameters.size() == 3);
  CHECK(sf.disc.deg() == 3);
  CHECK(sf.disc.eval_k(Rational(1)) == 0);
  CHECK(!(sf.disc.eval_k(Rational(2)) == 0));
  int reals = 0;
  for (const auto& a : sf.parameters)
    if (a.certify_real()) ++reals;
  CHECK(reals == 1);
}

TEST_CASE("the Hesse pencil reduces to a family with a constant flex section") {
  FiberFamily F = make_fiber_family(hesse_family());
  CHECK(F.model.flex);
  CHECK(on_curve(F.model.E, F.sigma));
  CHECK(!kzero(F.model.E.disc()));

  RatFunc j = j_invariant(F.model.E);
  CHECK(!j.is_constant());
  CHECK(j.defined_at(Rational(0)));
  CHECK(j.eval(Rational(0)) == Rational(0));  // the Fermat member

  ShortCurve<Rational> E0 = specialize_curve(F, Rational(0));
  EPoint<Rational> P0 = specialize_section(F, Rational(0));
  CHECK(on_curve(E0, P0));
  CHECK(torsion_order(E0, P0, 12) == 3);
  CHECK_THROWS_AS(specialize_curve(F, Rational(1)), singular_fiber_error);

  // the section is one of the base flexes, so it is three-torsion in the
  // whole family and never two-torsion
  CHECK_THROWS_AS(torsion_value_polynomial(F, 3), section_torsion_error);
  CHECK_THROWS_AS(torsion_value_polynomial(F, 6), section_torsion_error);
  CHECK(torsion_value_polynomial(F, 1).deg() == 0);
  CHECK(torsion_value_polynomial(F, 2).deg() == 0);
}

TEST_CASE("pencils of the sample surface reduce to elliptic families") {
  const QuarticSurface& S = sample_surface();
  for (int axis : {1, 2}) {
    ResidualCubicFamily fam = residual_cubic(S, axis);
    FiberFamily F = make_fiber_family(fam);
    CHECK(F.axis == axis);
    CHECK(on_curve(F.model.E, F.sigma));
    CHECK(!kzero(F.model.E.disc()));
    CHECK(!j_invariant(F.model.E).is_constant());
    CHECK(!kzero(F.u));

    // integral model matches the twist
    RatFunc u2 = F.u * F.u;
    RatFunc scaled_a = u2 * u2 * F.model.E.A;
    RatFunc scaled_b = u2 * u2 * u2 * F.model.E.B;
    CHECK(RatFunc(F.Ai) == scaled_a);
    CHECK(RatFunc(F.Bi) == scaled_b);
  }
}

TEST_CASE("singular parameters of the sample pencils satisfy the model discriminant") {
  const QuarticSurface& S = sample_surface();
  ResidualCubicFamily fam = residual_cubic(S, 1);
  FiberFamily F = make_fiber_family(fam);
  SingularFiberSet sf = singular_fibers(fam);
  CHECK(sf.count >= 1);

  const RatFunc& A = F.model.E.A;
  const RatFunc& B = F.model.E.B;
  RatFunc delta = kmul_si(A * A * A, 4) + kmul_si(B * B, 27);
  QPoly witness = delta.num * A.den * B.den;
  for (const auto& a : sf.parameters) CHECK(a.vanishes_at(witness));
}

TEST_CASE("torsion value parameters specialize to honest torsion points") {
  const QuarticSurface& S = sample_surface();
  for (int axis : {1, 2}) {
    FiberFamily F = make_fiber_family(residual_cubic(S, axis));
    for (int m = 1; m <= 4; ++m) {
      QPoly T;
      try {
        T = torsion_value_polynomial(F, m);
      } catch (const section_torsion_error&) {
        continue;  // section torsion in the whole family: nothing to scan
      }
      CHECK(T.deg() >= 0);
      QPoly Tc = T;
      for (const Rational& t0 : rational_roots(Tc)) {
        ShortCurve<Rational> E0 = specialize_curve(F, t0);
        EPoint<Rational> P0 = specialize_section(F, t0);
        auto ord = torsion_order(E0, P0, 4 * m);
        REQUIRE(ord.has_value());
        CHECK(m % *ord == 0);
      }
      if (m > 1) {
        QPoly X = exact_order_value_polynomial(F, m);
        QPoly Xc = X;
        for (const Rational& t0 : rational_roots(Xc)) {
          ShortCurve<Rational> E0 = specialize_curve(F, t0);
          EPoint<Rational> P0 = specialize_section(F, t0);
          CHECK(torsion_order(E0, P0, 4 * m) == m);
        }
      }
    }
  }
}
