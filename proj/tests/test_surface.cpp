#include "doctest.h"

#include <set>

#include "bifib/rng.hpp"
#include "bifib/surface.hpp"

using namespace bifib;

namespace {

// fixed sample used across the suite; bound 3 keeps the certificates fast
QuarticSurface sample_surface() {
  static QuarticSurface S = build_three_line_quartic(20260818, 3);
  return S;
}

MultiPoly lift_cubic(const TernForm<Rational>& c, const std::array<int, 3>& vars) {
  MultiPoly out(4);
  int idx = 0;
  for (int i = 3; i >= 0; --i)
    for (int j = 3 - i; j >= 0; --j, ++idx) {
      if (c.c[static_cast<size_t>(idx)].is_zero()) continue;
      Mono m;
      m.e[vars[0]] = static_cast<uint16_t>(i);
      m.e[vars[1]] = static_cast<uint16_t>(j);
      m.e[vars[2]] = static_cast<uint16_t>(3 - i - j);
      out.add_term(m, c.c[static_cast<size_t>(idx)]);
    }
  return out;
}

}  // namespace

TEST_CASE("three line basis") {
  auto monos = admissible_quartic_monomials();
  CHECK(monos.size() == 25);
  auto basis = three_line_quartic_basis();
  CHECK(basis.size() == 20);

  std::set<Mono> leads;
  for (const auto& b : basis) {
    CHECK(b.term_count() == 2);
    for (const Line3& l : {line_L1(), line_L2(), line_M()}) CHECK(contains_line(b, l));
    // each element owns a monomial no other element touches (the bucket
    // representative is the shared larger term), so they are independent
    leads.insert(b.terms().begin()->first);
  }
  CHECK(leads.size() == 20);
}

TEST_CASE("surface construction and serialization") {
  QuarticSurface S = sample_surface();
  CHECK(S.F.total_degree() == 4);
  for (const Line3& l : {line_L1(), line_L2(), line_M()}) CHECK(contains_line(S.F, l));

  std::string text = surface_to_text(S);
  QuarticSurface T = surface_from_text(text);
  CHECK(T.F == S.F);
  CHECK(T.id == S.id);
  CHECK(surface_to_text(T) == text);

  auto c = S.full_coefficients();
  QuarticSurface U = QuarticSurface::from_full_coefficients(c);
  CHECK(U.F == S.F);

  // x^3*z passes through the two coordinate lines but not the diagonal one,
  // so the exact containment check must reject it; locate its slot in the
  // descending-lex monomial order
  std::array<Rational, 35> cc{};
  int idx = 0;
  bool placed = false;
  for (int a = 4; a >= 0 && !placed; --a)
    for (int b2 = 4 - a; b2 >= 0 && !placed; --b2)
      for (int c2 = 4 - a - b2; c2 >= 0 && !placed; --c2) {
        if (a == 3 && b2 == 0 && c2 == 1) placed = true;
        else ++idx;
      }
  REQUIRE(placed);
  cc[static_cast<size_t>(idx)] = Rational(1);
  CHECK_THROWS_AS(QuarticSurface::from_full_coefficients(cc), invalid_argument_error);
}

TEST_CASE("residual cubic families") {
  QuarticSurface S = sample_surface();
  SplitMix64 rng(7);
  for (int axis = 1; axis <= 2; ++axis) {
    ResidualCubicFamily fam = residual_cubic(S, axis);
    for (const QPoly& q : fam.main.c) CHECK(q.deg() <= 3);

    for (int rep = 0; rep < 6; ++rep) {
      Rational t(rng.next_in(-9, 9), rng.next_in(1, 5));
      TernForm<Rational> C = specialize(fam.main, t);

      // the plane section is exactly the axis line plus the residual cubic
      MultiPoly sub, expect;
      if (axis == 1) {
        sub = S.F.substitute(2, t * MultiPoly::var(4, 3));
        expect = MultiPoly::var(4, 3) * lift_cubic(C, {0, 1, 3});
      } else {
        sub = S.F.substitute(0, t * MultiPoly::var(4, 1));
        expect = MultiPoly::var(4, 1) * lift_cubic(C, {1, 2, 3});
      }
      CHECK(sub == expect);

      // marked points lie on every fiber
      auto z = marked_point_at(fam.zero_point, t);
      auto m = marked_point_at(fam.section_point, t);
      CHECK(C.eval(z[0], z[1], z[2]).is_zero());
      CHECK(C.eval(m[0], m[1], m[2]).is_zero());
    }

    // symbolically: marked points satisfy the family identically
    QPoly e0 = fam.main.eval(fam.zero_point[0], fam.zero_point[1], fam.zero_point[2]);
    CHECK(e0.is_zero());
    QPoly e1 = fam.main.eval(fam.section_point[0], fam.section_point[1], fam.section_point[2]);
    CHECK(e1.is_zero());
    QPoly e2 = fam.inf_chart.eval(fam.zero_point_inf[0], fam.zero_point_inf[1], fam.zero_point_inf[2]);
    CHECK(e2.is_zero());
    QPoly e3 = fam.inf_chart.eval(fam.section_point_inf[0], fam.section_point_inf[1],
                                  fam.section_point_inf[2]);
    CHECK(e3.is_zero());

    // the two charts describe the same fibers at t' = 1/t: the main-chart
    // cubic with its third coordinate rewritten through the far chart must be
    // proportional to the far-chart cubic
    if (axis == 1) {
      Rational t(3, 2);
      TernForm<Rational> Cm = specialize(fam.main, t);
      TernForm<Rational> Ci = specialize(fam.inf_chart, Rational(2, 3));
      MultiPoly a = lift_cubic(Cm, {0, 1, 3}).substitute(3, Rational(2, 3) * MultiPoly::var(4, 2));
      MultiPoly b = lift_cubic(Ci, {0, 1, 2});
      REQUIRE(!a.is_zero());
      REQUIRE(!b.is_zero());
      Rational scale = a.terms().begin()->second / b.terms().find(a.terms().begin()->first)->second;
      CHECK(a == scale * b);
    }
  }
}

TEST_CASE("trisection points") {
  QuarticSurface S = sample_surface();
  for (int axis = 1; axis <= 2; ++axis) {
    ResidualCubicFamily fam = residual_cubic(S, axis);
    SplitMix64 rng(11 + static_cast<uint64_t>(axis));
    for (int rep = 0; rep < 4; ++rep) {
      Rational t(rng.next_in(-20, 20), rng.next_in(1, 7));
      TrisectionResult tri = trisection_points(fam, t);
      if (tri.excluded_fiber) continue;
      int total = tri.multiplicity_at_infinity;
      for (const auto& [alpha, mult] : tri.ratios) total += mult;
      CHECK(total == 3);
    }
  }
}

TEST_CASE("fiber pair quadratic") {
  QuarticSurface S = sample_surface();
  FiberPairQuadratic Q = fiber_pair_quadratic(S, false, false);
  // F(s*y, y, t*w, w) == y * w * Q(y, w) identically
  MultiPoly G = S.F.extend_arity(6);
  MultiPoly t = MultiPoly::var(6, 4), s = MultiPoly::var(6, 5);
  MultiPoly sub = G.substitute(2, t * MultiPoly::var(6, 3)).substitute(0, s * MultiPoly::var(6, 1));
  MultiPoly y = MultiPoly::var(6, 1), w = MultiPoly::var(6, 3);
  MultiPoly rebuilt(6);
  for (int i = 0; i < 3; ++i) {
    MultiPoly ci(6);
    for (const auto& [m, q] : Q.c[static_cast<size_t>(i)].terms()) {
      Mono mm;
      mm.e[4] = m.e[0];
      mm.e[5] = m.e[1];
      ci.add_term(mm, q);
    }
    MultiPoly part = ci;
    for (int k = 0; k < 2 - i; ++k) part = part * y;
    for (int k = 0; k < i; ++k) part = part * w;
    rebuilt = rebuilt + part;
  }
  CHECK(sub == y * w * rebuilt);
}

TEST_CASE("smoothness certificate") {
  QuarticSurface S = sample_surface();
  SmoothnessReport rep = certify_smooth(S);
  CHECK(rep.status == SmoothStatus::certified_smooth);
  CHECK(rep.elimination_pass);
  CHECK(rep.candidate_pass);
  CHECK(rep.candidates_checked > 0);

  // the union of three concurrent planes with a fourth is badly singular and
  // the certificate must not claim otherwise; x*y*z*w contains all three
  // lines? it does not contain M, so use a singular member of the family:
  // the product (x*z - y*w)^2 style squares are not quartics through the
  // lines either, so instead perturb the sample and expect either a clean
  // rejection or a different certificate outcome
  std::vector<Rational> zero20(20, Rational(0));
  zero20[0] = Rational(1);
  QuarticSurface T = QuarticSurface::from_basis_coefficients(zero20);
  SmoothnessReport rep2 = certify_smooth(T);
  CHECK(rep2.status != SmoothStatus::certified_smooth);
}
