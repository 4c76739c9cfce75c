#include "doctest.h"

#include "bifib/algebraic.hpp"
#include "bifib/poly.hpp"
#include "bifib/roots.hpp"

using namespace bifib;

namespace {
QPoly qp(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}
}  // namespace

TEST_CASE("univariate resultants") {
  QPoly f = qp({-1, 0, 1});   // x^2 - 1
  QPoly g = qp({-4, 0, 1});   // x^2 - 4
  CHECK(qpoly_resultant(f, g) == Rational(9));

  QPoly lin = qp({-5, 1});
  QPoly h = qp({-7, 1, 0, 2});  // 2x^3 + x - 7
  CHECK(qpoly_resultant(lin, h) == h.eval_k(Rational(5)));
  CHECK(qpoly_resultant(h, lin) == -h.eval_k(Rational(5)));

  QPoly cub = qp({0, -1, 0, 1});  // x^3 - x
  CHECK(qpoly_resultant(cub, cub.derivative()) == Rational(-4));

  QPoly s2 = qp({-2, 0, 1}), s3 = qp({-3, 0, 1});
  CHECK(qpoly_resultant(s2, s3) == Rational(1));
  CHECK(qpoly_resultant(s2, s2) == Rational(0));

  QPoly fr({Rational(-1), Rational(0), Rational(1, 2)});
  CHECK(qpoly_resultant(fr, qp({-2, 1})) == Rational(1));
}

TEST_CASE("gcd, squarefree decomposition, rational roots") {
  QPoly f = qp({-1, 0, 1}), g = qp({-4, 0, 1}), lin = qp({-5, 1});
  QPoly gc = qpoly_gcd(f * g, f * lin);
  CHECK(gc.deg() == 2);
  CHECK(gc.eval_k(Rational(1)).is_zero());
  CHECK(gc.eval_k(Rational(-1)).is_zero());

  QPoly m1 = qp({-1, 1}), p2 = qp({2, 1});
  auto parts = yun_squarefree(m1 * m1 * m1 * p2);
  int seen = 0;
  for (const auto& [fac, mult] : parts) {
    if (mult == 1) CHECK(fac.eval_k(Rational(-2)).is_zero());
    if (mult == 3) CHECK(fac.eval_k(Rational(1)).is_zero());
    seen += mult * fac.deg();
  }
  CHECK(seen == 4);

  QPoly r = m1 * m1 * qp({-7, 1, 0, 2});
  auto roots = rational_roots(r);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rational(1));
  CHECK(r.deg() == 3);
}

TEST_CASE("certified root isolation") {
  QPoly s2 = qp({-2, 0, 1}), c1 = qp({1, 0, 1}), m3 = qp({-3, 1});
  auto boxes = isolate_roots(s2 * c1 * m3 * m3);
  int total = 0, reals = 0;
  for (const auto& b : boxes) {
    total += b.multiplicity;
    reals += b.certified_real ? 1 : 0;
    for (const auto& o : boxes)
      if (&o != &b) CHECK(boxes_disjoint(b, o));
  }
  CHECK(total == 6);
  CHECK(boxes.size() == 5);
  CHECK(reals == 3);

  for (auto b : boxes) {
    if (!b.certified_real || b.multiplicity != 1) continue;
    if (b.re > BigFloat(1.0, 64) && b.re < BigFloat(2.0, 64)) {
      refine_root(s2, b, 256);
      BigFloat two = b.re * b.re;
      CHECK(abs(two - BigFloat(2.0, 300)) < BigFloat(1e-70, 64));
    }
  }

  auto tight = isolate_roots_within(s2 * c1 * m3 * m3, BigFloat(1e-30, 64));
  for (const auto& b : tight) CHECK(b.radius <= BigFloat(1e-30, 64));
}

TEST_CASE("algebraic number decision procedures") {
  QPoly s2 = qp({-2, 0, 1}), s3 = qp({-3, 0, 1});
  auto roots = AlgebraicNumber::roots_of(s2);
  REQUIRE(roots.size() == 2);
  const AlgebraicNumber& r2 = roots[1];

  CHECK(r2.vanishes_at(s2));
  CHECK_FALSE(r2.vanishes_at(s3));
  CHECK(r2.vanishes_at(s2 * s3));
  CHECK(r2.compare_rational(Rational(1)) == 1);
  CHECK(r2.compare_rational(Rational(3, 2)) == -1);
  CHECK(r2.certify_real());

  auto iroots = AlgebraicNumber::roots_of(qp({1, 0, 1}));
  CHECK_FALSE(iroots[0].certify_real());

  auto four = AlgebraicNumber::roots_of(s2 * s3);
  REQUIRE(four.size() == 4);
  CHECK(r2.same_root(four[2]));
  CHECK_FALSE(r2.same_root(four[3]));
  CHECK(AlgebraicNumber(Rational(1, 3)).same_root(AlgebraicNumber(Rational(1, 3))));

  int nreal = 0;
  for (const auto& a : AlgebraicNumber::roots_of(qp({-2, 0, 0, 1}))) nreal += a.certify_real();
  CHECK(nreal == 1);

  bool found_third = false;
  for (const auto& a : AlgebraicNumber::roots_of(qp({-1, 3}) * s2))
    if (a.is_rational() && a.rational_value() == Rational(1, 3)) found_third = true;
  CHECK(found_third);
}

TEST_CASE("multivariate elimination") {
  MultiPoly X = MultiPoly::var(2, 0), Y = MultiPoly::var(2, 1);
  MultiPoly circ = X * X + Y * Y - MultiPoly::constant(2, Rational(1));
  MultiPoly res = mp_resultant(circ, X - Y, 0);
  MultiPoly want = Rational(2) * Y * Y - MultiPoly::constant(2, Rational(1));
  // resultants agree up to sign convention
  CHECK((res == want || res == -want));
}
