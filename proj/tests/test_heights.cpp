#include <doctest.h>

#include <json.hpp>

#include "bifib/elimination.hpp"
#include "bifib/heights.hpp"
#include "bifib/surface.hpp"

#include <algorithm>
#include <cmath>

using namespace bifib;

namespace {

EPoint<Rational> pt(long x, long y) { return EPoint<Rational>::affine(Rational(x), Rational(y)); }

ShortCurve<Rational> curve(long a, long b) { return ShortCurve<Rational>{Rational(a), Rational(b)}; }

// short model of the conductor-37 rank-one curve, with its generator
const ShortCurve<Rational> e37{Rational(-1296), Rational(11664)};
const EPoint<Rational> g37 = pt(0, 108);

IntPoly ipoly(std::initializer_list<long> cs) {
  IntPoly f;
  for (long c : cs) f.c.emplace_back(c);
  return f;
}

// x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1
const IntPoly lehmer = ipoly({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});

ComplexApprox ca(const BigFloat& v) { return ComplexApprox(v, BigFloat(0.0, 64), 1e-40L); }

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

TEST_CASE("projective naive height over the rationals") {
  HeightValue h = naive_height({Rational(1, 2), Rational(3, 4)});
  CHECK(std::fabs(h.value - std::log(3.0)) < 1e-13);
  CHECK(naive_height({Rational(0), Rational(5)}).value == 0.0);
  CHECK(naive_height({Rational(-7, 5), Rational(7, 5)}).value == 0.0);
  CHECK(naive_height({Rational(2, 3)}).value == 0.0);
  CHECK(std::fabs(naive_height({Rational(3, 2), Rational(1)}).value - std::log(3.0)) < 1e-13);
  CHECK_THROWS_AS(naive_height({Rational(0), Rational(0)}), invalid_argument_error);
  CHECK_THROWS_AS(naive_height(std::vector<Rational>{}), invalid_argument_error);
}

TEST_CASE("archimedean naive height from certified embeddings") {
  BigFloat one(1.0, 192);
  BigFloat r2 = sqrt(BigFloat(2.0, 192));
  std::vector<std::vector<ComplexApprox>> rt2{{ca(one), ca(r2)}, {ca(one), ca(-r2)}};
  HeightValue h2 = naive_height(rt2);
  CHECK(std::fabs(h2.value - 0.5 * std::log(2.0)) < 1e-12);
  CHECK(h2.error < 1e-9);

  BigFloat r5 = sqrt(BigFloat(5.0, 192));
  BigFloat phi = (one + r5) / BigFloat(2.0, 192);
  BigFloat phic = (one - r5) / BigFloat(2.0, 192);
  std::vector<std::vector<ComplexApprox>> gold{{ca(one), ca(phi)}, {ca(one), ca(phic)}};
  HeightValue hg = naive_height(gold);
  CHECK(std::fabs(hg.value - 0.24060591252959) < 1e-10);
  // same number through the minimal polynomial of phi
  HeightValue hm = mahler_height(ipoly({-1, -1, 1}));
  CHECK(std::fabs(hg.value - hm.value) < 1e-10);

  CHECK_THROWS_AS(naive_height(std::vector<std::vector<ComplexApprox>>{}), invalid_argument_error);
  std::vector<std::vector<ComplexApprox>> zero_row{{ca(BigFloat(0.0, 64))}};
  CHECK_THROWS_AS(naive_height(zero_row), precision_exhausted);
  std::vector<std::vector<ComplexApprox>> ragged{{ca(one), ca(r2)}, {ca(one)}};
  CHECK_THROWS_AS(naive_height(ragged), invalid_argument_error);
}

TEST_CASE("Mahler measures of the classical catalog") {
  CHECK(std::fabs(log_mahler_measure(ipoly({-2, 0, 1})) - std::log(2.0)) < 1e-12);
  CHECK(std::fabs(mahler_height(ipoly({-2, 0, 1})).value - 0.5 * std::log(2.0)) < 1e-12);
  // M(2x - 3) = 3, matching the naive height of 3/2
  CHECK(std::fabs(log_mahler_measure(ipoly({-3, 2})) - std::log(3.0)) < 1e-12);
  // cyclotomic: measure one
  CHECK(std::fabs(log_mahler_measure(ipoly({1, 1, 1, 1, 1, 1, 1}))) < 1e-12);
  // the smallest known measure above one
  CHECK(std::fabs(log_mahler_measure(lehmer) - 0.16235761200) < 1e-9);
  // multiplicativity across a product of coprime factors
  QPoly prod = to_qpoly(lehmer) * to_qpoly(ipoly({-2, 0, 1}));
  double lhs = log_mahler_measure(to_int_primitive(prod));
  double rhs = log_mahler_measure(lehmer) + std::log(2.0);
  CHECK(std::fabs(lhs - rhs) < 1e-10);
  CHECK_THROWS_AS(log_mahler_measure(ipoly({7})), invalid_argument_error);
  CHECK_THROWS_AS(log_mahler_measure(IntPoly{}), invalid_argument_error);
}

TEST_CASE("degree pattern certificates of irreducibility") {
  CHECK(certify_irreducible(ipoly({1, 1, 1, 1, 1, 1, 1})));  // seventh cyclotomic
  CHECK(certify_irreducible(ipoly({-5, 1})));
  CHECK(certify_irreducible(lehmer));
  // irreducible over the rationals but split at every prime: stays undecided
  CHECK(!certify_irreducible(ipoly({1, 0, 0, 0, 1})));
  CHECK(!certify_irreducible(ipoly({6, 0, -5, 0, 1})));  // (x^2-2)(x^2-3)
  CHECK(!certify_irreducible(ipoly({4, 0, -4, 0, 1})));  // (x^2-2)^2
  CHECK(!certify_irreducible(ipoly({3})));
  CHECK(!certify_irreducible(IntPoly{}));
}

TEST_CASE("canonical height along the doubling orbit of the rank-one generator") {
  DoublingTrace tr;
  HeightValue h = canonical_height(e37, g37, 1e-8, &tr);
  CHECK(std::fabs(h.value - 0.0511114082) < 5e-9);
  CHECK(h.error < 1e-8);
  CHECK(!tr.cycled);
  CHECK(tr.steps >= 8);
  CHECK(tr.last_defect > 5.0);
  CHECK(tr.last_defect < 20.0);

  // quadratic in the multiple
  HeightValue h1 = canonical_height(e37, g37, 1e-9);
  for (int m : {2, 3}) {
    HeightValue hm = canonical_height(e37, scalar_mul(e37, m, g37), 1e-9);
    CHECK(std::fabs(hm.value - m * m * h1.value) < 5e-9);
  }
  for (int m : {4, 5}) {
    HeightValue hm = canonical_height(e37, scalar_mul(e37, m, g37), 1e-6);
    CHECK(std::fabs(hm.value - m * m * h1.value) < 1e-5);
  }

  // invariant under the weight (u^2, u^3) rescaling with u = 2
  ShortCurve<Rational> e37u{e37.A * 16, e37.B * 64};
  HeightValue hu = canonical_height(e37u, pt(0, 108 * 8), 1e-9);
  CHECK(std::fabs(hu.value - h1.value) < 1e-11);

  CHECK(canonical_height(e37, EPoint<Rational>(), 1e-9).value == 0.0);
  CHECK_THROWS_AS(canonical_height(e37, pt(1, 1), 1e-9), invalid_argument_error);
  CHECK_THROWS_AS(canonical_height(curve(0, 0), pt(0, 0), 1e-9), invalid_argument_error);
  CHECK_THROWS_AS(canonical_height(e37, g37, 0.0), invalid_argument_error);
}

TEST_CASE("torsion orbits collapse to exact height zero") {
  struct Row {
    long a, b, x, y;
    int max_steps;
  };
  const Row rows[] = {
      {0, 1, 2, 3, 3},     // order 6
      {0, 4, 0, 2, 2},     // order 3, fixed x-orbit
      {-43, 166, 3, 8, 4},  // order 7, cycling x-orbit
      {-1, 0, 0, 0, 1},    // order 2, falls onto the origin
  };
  for (const Row& r : rows) {
    DoublingTrace tr;
    HeightValue h = canonical_height(curve(r.a, r.b), pt(r.x, r.y), 1e-9, &tr);
    CHECK(h.value == 0.0);
    CHECK(h.error == 0.0);
    CHECK(tr.cycled);
    CHECK(tr.steps <= r.max_steps);
  }
  // a non-torsion point of comparable size stays positive
  DoublingTrace tr;
  HeightValue h = canonical_height(curve(0, -2), pt(3, 5), 1e-6, &tr);
  CHECK(!tr.cycled);
  CHECK(h.value > 1.0);
  CHECK(std::fabs(h.value - 1.3495767) < 1e-5);
  CHECK(!torsion_order(curve(0, -2), pt(3, 5), 12).has_value());
}

TEST_CASE("parallelogram residual and symmetrized decomposition") {
  EPoint<Rational> x = scalar_mul(e37, 2, g37);
  EPoint<Rational> y = scalar_mul(e37, 3, g37);
  HeightValue pr = parallelogram_residual(e37, x, y, 1e-7);
  CHECK(std::fabs(pr.value) < 1e-7);
  CHECK(std::fabs(pr.value) <= pr.error + 1e-12);
  CHECK(pr.error < 1e-6);

  // degenerate pairs exercise the group-law corner cases
  CHECK(std::fabs(parallelogram_residual(e37, g37, g37, 1e-6).value) < 1e-5);
  CHECK(std::fabs(parallelogram_residual(e37, g37, ec_neg(g37), 1e-6).value) < 1e-5);

  SymmetrizedHeight sh = symmetrized_canonical_height(e37, g37, 1e-8);
  CHECK(sh.skew.value == 0.0);
  CHECK(sh.sym.value == 2.0 * sh.total.value);
  CHECK(std::fabs(sh.total.value - 0.0511114082) < 5e-9);
}

TEST_CASE("explicit torsion and rational-point bound reports") {
  BoundReport tb = torsion_order_bound(1, 1, 0.0);
  CHECK(tb.exact);
  CHECK(tb.value == boost::multiprecision::pow(BigInt(14), 143360u));
  CHECK(std::fabs(tb.log10_value - 164308.9152) < 0.01);
  // the stored log agrees with a direct log of the stored integer
  double direct = log10(BigFloat(tb.value, 256)).to_double();
  CHECK(std::fabs(tb.log10_value - direct) < 1e-6);

  BoundReport tb2 = torsion_order_bound(1, 1, 2.5);
  CHECK(!tb2.exact);
  CHECK(tb2.log10_value > tb.log10_value);
  CHECK(tb2.value > tb.value);

  BoundReport td = torsion_order_bound(1, 2, 0.0);
  CHECK(td.exact);
  CHECK(td.value == boost::multiprecision::pow(BigInt(14), 143360u) *
                        boost::multiprecision::pow(BigInt(2), 2240u));

  auto [ke, kc] = remond_kappa(1, 1, 0.0);
  CHECK(ke.value == tb.value);
  CHECK(kc.value == boost::multiprecision::pow(BigInt(14), 327680u));
  CHECK(std::fabs(kc.log10_value / ke.log10_value - 16.0 / 7.0) < 1e-9);

  CHECK(remond_constant(1) == 6720);
  CHECK(remond_constant(2) == 53760);
  CHECK(std::fabs(isogeny_height_delta(BigInt(4)) - std::log(2.0)) < 1e-13);
  CHECK(isogeny_height_delta(BigInt(1)) == 0.0);

  CHECK_THROWS_AS(torsion_order_bound(0, 1, 0.0), invalid_argument_error);
  CHECK_THROWS_AS(torsion_order_bound(1, 0, 0.0), invalid_argument_error);
  CHECK_THROWS_AS(torsion_order_bound(1, 1, -1.0), invalid_argument_error);
  CHECK_THROWS_AS(isogeny_height_delta(BigInt(0)), invalid_argument_error);
  // the genus-3 cardinality bound overflows the supported size and says so
  CHECK_THROWS_AS(remond_kappa(3, 1, 0.0), invalid_argument_error);
}

TEST_CASE("torsion value height survey of the sample fibration") {
  FiberFamily F = make_fiber_family(residual_cubic(sample_surface(), 2));
  TorsionHeightSurvey sv = torsion_height_survey(F, 5);
  CHECK(sv.axis == 2);
  CHECK(sv.m_max == 5);
  CHECK(sv.section_torsion_orders.empty());
  REQUIRE(sv.rows.size() == 4);
  const int orders[] = {2, 3, 4, 5};
  const int degs[] = {6, 16, 24, 48};
  const double heights[] = {1.000819172, 0.976825503, 0.977573496, 0.984348148};
  for (size_t i = 0; i < 4; ++i) {
    CHECK(sv.rows[i].order == orders[i]);
    CHECK(sv.rows[i].degree == degs[i]);
    CHECK(sv.rows[i].irreducible);
    CHECK(std::fabs(sv.rows[i].height.value - heights[i]) < 1e-5);
    CHECK(sv.rows[i].height.error < 1e-9);
  }
  // no order-1 row, then a running maximum that never decreases
  CHECK(std::isnan(sv.running_max[0]));
  CHECK(std::fabs(sv.running_max[1] - 1.000819172) < 1e-5);
  CHECK(sv.running_max[4] >= sv.running_max[1]);

  auto j = nlohmann::json::parse(survey_json(sv));
  CHECK(j["schema_version"] == 1);
  CHECK(j["axis"] == 2);
  CHECK(j["rows"].size() == 4);
  CHECK(j["running_max"][0].is_null());
  CHECK(j["rows"][0]["degree"] == 6);

  std::string csv = survey_csv(sv);
  CHECK(csv.rfind("order,degree,annihilator,irreducible,height,height_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  CHECK_THROWS_AS(torsion_height_survey(F, 0), invalid_argument_error);
}

TEST_CASE("survey of a family whose marked section is torsion") {
  FiberFamily H = make_fiber_family(hesse_family());
  TorsionHeightSurvey sv = torsion_height_survey(H, 8);
  CHECK(sv.rows.empty());
  REQUIRE(sv.section_torsion_orders.size() == 2);
  CHECK(sv.section_torsion_orders[0] == 3);
  CHECK(sv.section_torsion_orders[1] == 6);
  for (double v : sv.running_max) CHECK(std::isnan(v));
}

TEST_CASE("section height growth on smooth fibers of the sample fibration") {
  FiberFamily F = make_fiber_family(residual_cubic(sample_surface(), 2));
  for (long t : {2, 3, 5}) {
    ShortCurve<Rational> E = specialize_curve(F, Rational(t));
    EPoint<Rational> P = specialize_section(F, Rational(t));
    DoublingTrace tr;
    HeightValue h = canonical_height(E, P, 1e-2, &tr);
    CHECK(!tr.cycled);
    CHECK(h.value > 1.0);  // the marked section is far from torsion here
    CHECK(h.error < 1e-1);
  }
}
