#include "bifib/cubic.hpp"

#include <map>

#include "bifib/errors.hpp"
#include "bifib/rng.hpp"
#include "bifib/surface.hpp"

namespace bifib {

MultiPoly to_multipoly(const TernForm<Rational>& f) {
  MultiPoly g(3);
  int idx = 0;
  for (int i = f.deg; i >= 0; --i)
    for (int j = f.deg - i; j >= 0; --j, ++idx) {
      if (f.c[static_cast<size_t>(idx)].is_zero()) continue;
      Mono m;
      m.e[0] = static_cast<uint16_t>(i);
      m.e[1] = static_cast<uint16_t>(j);
      m.e[2] = static_cast<uint16_t>(f.deg - i - j);
      g.add_term(m, f.c[static_cast<size_t>(idx)]);
    }
  return g;
}

// product of unit lower and unit upper triangular matrices with small random
// off-diagonal entries; always determinant one
std::array<std::array<Rational, 3>, 3> unimodular_shear3(uint64_t seed) {
  SplitMix64 rng(seed);
  long L[3][3] = {}, U[3][3] = {};
  for (int i = 0; i < 3; ++i) {
    L[i][i] = U[i][i] = 1;
    for (int j = 0; j < i; ++j) L[i][j] = rng.next_in(-2, 2);
    for (int j = i + 1; j < 3; ++j) U[i][j] = rng.next_in(-2, 2);
  }
  std::array<std::array<Rational, 3>, 3> T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long s = 0;
      for (int k = 0; k < 3; ++k) s += L[i][k] * U[k][j];
      T[i][j] = Rational(s);
    }
  return T;
}

TernForm<Rational> specialize(const TernForm<QPoly>& f, const Rational& t) {
  TernForm<Rational> r(f.deg);
  for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = f.c[i].eval_k(t);
  return r;
}

TernForm<ComplexApprox> specialize_ca(const TernForm<QPoly>& f, const ComplexApprox& t) {
  TernForm<ComplexApprox> r(f.deg);
  for (size_t i = 0; i < f.c.size(); ++i) r.c[i] = qpoly_eval_ca(f.c[i], t);
  return r;
}

namespace {

// gather a polynomial supported on three plane variables and the pencil
// parameter into a ternary cubic with polynomial coefficients
TernForm<QPoly> collect_cubic(const MultiPoly& C, const std::array<int, 3>& vars, int param) {
  std::array<std::map<int, Rational>, 10> acc;
  for (const auto& [m, q] : C.terms()) {
    int e0 = m.e[vars[0]], e1 = m.e[vars[1]], e2 = m.e[vars[2]];
    int et = m.e[param];
    int total = 0;
    for (int v = 0; v < C.arity(); ++v) total += m.e[v];
    if (e0 + e1 + e2 != 3 || e0 + e1 + e2 + et != total)
      throw internal_consistency_error("residual cubic has unexpected support");
    acc[static_cast<size_t>(tern_index(3, e0, e1))][et] += q;
  }
  TernForm<QPoly> out(3);
  for (size_t idx = 0; idx < 10; ++idx) {
    int dmax = -1;
    for (const auto& [d, q] : acc[idx])
      if (!q.is_zero()) dmax = std::max(dmax, d);
    std::vector<Rational> c(static_cast<size_t>(dmax + 1), Rational(0));
    for (const auto& [d, q] : acc[idx])
      if (d <= dmax) c[static_cast<size_t>(d)] = q;
    out.c[idx] = QPoly(std::move(c));
  }
  return out;
}

MultiPoly divide_or_fail(const MultiPoly& f, const MultiPoly& g, const char* what) {
  try {
    return mp_exact_div(f, g);
  } catch (const invalid_argument_error&) {
    throw internal_consistency_error(std::string("residual division failed: ") + what);
  }
}

}  // namespace

ResidualCubicFamily residual_cubic(const QuarticSurface& S, int axis) {
  if (axis != 1 && axis != 2) throw invalid_argument_error("axis must be 1 or 2");
  MultiPoly G = S.F.extend_arity(5);  // variables x, y, z, w and the parameter
  MultiPoly t = MultiPoly::var(5, 4);
  ResidualCubicFamily fam;
  fam.axis = axis;
  QPoly zero, one(Rational(1)), tp(std::vector<Rational>{Rational(0), Rational(1)});
  if (axis == 1) {
    // pencil z = t*w through L1; residual curve after removing the plane's
    // copy of L1 lives in coordinates (x, y, w)
    MultiPoly sub = G.substitute(2, t * MultiPoly::var(5, 3));
    fam.main = collect_cubic(divide_or_fail(sub, MultiPoly::var(5, 3), "pencil 1"), {0, 1, 3}, 4);
    MultiPoly sub2 = G.substitute(3, t * MultiPoly::var(5, 2));
    fam.inf_chart =
        collect_cubic(divide_or_fail(sub2, MultiPoly::var(5, 2), "pencil 1 far chart"), {0, 1, 2}, 4);
    fam.zero_point = {zero, zero, one};         // intersection with L2
    fam.section_point = {tp, one, one};         // intersection with M
    fam.zero_point_inf = {zero, zero, one};
    fam.section_point_inf = {one, tp, one};
  } else {
    // pencil x = s*y through L2; residual curve in coordinates (y, z, w)
    MultiPoly sub = G.substitute(0, t * MultiPoly::var(5, 1));
    fam.main = collect_cubic(divide_or_fail(sub, MultiPoly::var(5, 1), "pencil 2"), {1, 2, 3}, 4);
    MultiPoly sub2 = G.substitute(1, t * MultiPoly::var(5, 0));
    fam.inf_chart =
        collect_cubic(divide_or_fail(sub2, MultiPoly::var(5, 0), "pencil 2 far chart"), {0, 2, 3}, 4);
    fam.zero_point = {one, zero, zero};         // intersection with L1
    fam.section_point = {one, tp, one};         // intersection with M
    fam.zero_point_inf = {one, zero, zero};
    fam.section_point_inf = {one, one, tp};
  }
  return fam;
}

std::array<Rational, 3> marked_point_at(const std::array<QPoly, 3>& pt, const Rational& t) {
  return {pt[0].eval_k(t), pt[1].eval_k(t), pt[2].eval_k(t)};
}

std::array<Rational, 4> lift_to_p3(int axis, bool inf_chart, const std::array<Rational, 3>& p,
                                   const Rational& t) {
  if (axis == 1)
    return inf_chart ? std::array<Rational, 4>{p[0], p[1], p[2], t * p[2]}
                     : std::array<Rational, 4>{p[0], p[1], t * p[2], p[2]};
  return inf_chart ? std::array<Rational, 4>{p[0], t * p[0], p[1], p[2]}
                   : std::array<Rational, 4>{t * p[0], p[0], p[1], p[2]};
}

TrisectionResult trisection_points(const ResidualCubicFamily& fam, const Rational& t) {
  TernForm<Rational> C = specialize(fam.main, t);
  std::array<Rational, 4> b;
  if (fam.axis == 1) {
    // L1 is w = 0 in plane coordinates (x, y, w); ratio is x : y
    b = {C.at(3, 0), C.at(2, 1), C.at(1, 2), C.at(0, 3)};
  } else {
    // L2 is y = 0 in plane coordinates (y, z, w); ratio is z : w
    b = {C.at(0, 3), C.at(0, 2), C.at(0, 1), C.at(0, 0)};
  }
  TrisectionResult res;
  if (b[0].is_zero() && b[1].is_zero() && b[2].is_zero() && b[3].is_zero()) {
    res.excluded_fiber = true;
    return res;
  }
  QPoly p({b[3], b[2], b[1], b[0]});
  res.multiplicity_at_infinity = 3 - p.deg();
  if (p.deg() >= 1)
    for (const auto& [f, mult] : yun_squarefree(p))
      for (const auto& alpha : AlgebraicNumber::roots_of(f)) res.ratios.emplace_back(alpha, mult);
  return res;
}

FiberPairQuadratic fiber_pair_quadratic(const QuarticSurface& S, bool t_inf, bool s_inf) {
  MultiPoly G = S.F.extend_arity(6);  // x, y, z, w, then the two pencil parameters
  MultiPoly t = MultiPoly::var(6, 4), s = MultiPoly::var(6, 5);
  MultiPoly zsub = t_inf ? G.substitute(3, t * MultiPoly::var(6, 2))
                         : G.substitute(2, t * MultiPoly::var(6, 3));
  MultiPoly xsub = s_inf ? zsub.substitute(1, s * MultiPoly::var(6, 0))
                         : zsub.substitute(0, s * MultiPoly::var(6, 1));
  int B1 = s_inf ? 0 : 1, B2 = t_inf ? 2 : 3;
  MultiPoly Q2 = divide_or_fail(
      divide_or_fail(xsub, MultiPoly::var(6, B1), "pair line, pencil 2 side"),
      MultiPoly::var(6, B2), "pair line, pencil 1 side");
  FiberPairQuadratic out;
  out.t_inf = t_inf;
  out.s_inf = s_inf;
  for (auto& c : out.c) c = MultiPoly(2);
  for (const auto& [m, q] : Q2.terms()) {
    int e1 = m.e[B1], e2 = m.e[B2];
    int total = 0;
    for (int v = 0; v < 6; ++v) total += m.e[v];
    if (e1 + e2 != 2 || e1 + e2 + m.e[4] + m.e[5] != total)
      throw internal_consistency_error("fiber pair intersection is not a binary quadratic");
    Mono mm;
    mm.e[0] = m.e[4];
    mm.e[1] = m.e[5];
    out.c[static_cast<size_t>(2 - e1)].add_term(mm, q);
  }
  return out;
}

}  // namespace bifib
