#include "bifib/surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bifib/elimination.hpp"
#include "bifib/errors.hpp"
#include "bifib/rng.hpp"
#include "bifib/roots.hpp"

namespace bifib {

namespace {

MultiPoly transform_linear(const MultiPoly& F, const std::array<std::array<long, 4>, 4>& T) {
  int n = F.arity();
  std::array<MultiPoly, 4> lin;
  for (int i = 0; i < 4; ++i) {
    lin[i] = MultiPoly(n);
    for (int j = 0; j < 4; ++j)
      if (T[i][j] != 0) lin[i] = lin[i] + Rational(T[i][j]) * MultiPoly::var(n, j);
  }
  MultiPoly out(n);
  for (const auto& [m, q] : F.terms()) {
    MultiPoly t = MultiPoly::constant(n, q);
    for (int v = 0; v < 4; ++v)
      for (int e = 0; e < m.e[v]; ++e) t = t * lin[v];
    out = out + t;
  }
  return out;
}

// unimodular integer matrix, product of a unit lower and unit upper
// triangular one with small entries
std::array<std::array<long, 4>, 4> unimodular_shear(uint64_t seed) {
  SplitMix64 rng(seed);
  long L[4][4] = {}, U[4][4] = {};
  for (int i = 0; i < 4; ++i) {
    L[i][i] = U[i][i] = 1;
    for (int j = 0; j < i; ++j) L[i][j] = rng.next_in(-2, 2);
    for (int j = i + 1; j < 4; ++j) U[i][j] = rng.next_in(-2, 2);
  }
  std::array<std::array<long, 4>, 4> T{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      long s = 0;
      for (int k = 0; k < 4; ++k) s += L[i][k] * U[k][j];
      T[i][j] = s;
    }
  return T;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string hash_id(const std::array<Rational, 35>& c) {
  std::string buf;
  for (const auto& q : c) {
    buf += rational_str(q);
    buf += ',';
  }
  std::ostringstream os;
  os << std::hex << fnv1a(buf);
  return os.str();
}

MultiPoly primitive_integer_quartic(const MultiPoly& F) {
  if (F.is_zero()) throw invalid_argument_error("zero quartic");
  BigInt den(1), num(0);
  for (const auto& [m, q] : F.terms()) den = lcm(den, denominator(q));
  for (const auto& [m, q] : F.terms()) num = gcd(num, numerator(q) * (den / denominator(q)));
  MultiPoly out(F.arity());
  // canonical sign: first monomial in descending lex order has positive sign
  Rational scale(den, num);
  if (F.terms().rbegin()->second * scale < 0) scale = -scale;
  for (const auto& [m, q] : F.terms()) out.add_term(m, q * scale);
  return out;
}

}  // namespace

Line3 line_L1() {
  Line3 l;
  l.forms = {{{Rational(0), Rational(0), Rational(1), Rational(0)},
              {Rational(0), Rational(0), Rational(0), Rational(1)}}};
  l.span = {{{Rational(1), Rational(0), Rational(0), Rational(0)},
             {Rational(0), Rational(1), Rational(0), Rational(0)}}};
  l.name = "L1";
  return l;
}

Line3 line_L2() {
  Line3 l;
  l.forms = {{{Rational(1), Rational(0), Rational(0), Rational(0)},
              {Rational(0), Rational(1), Rational(0), Rational(0)}}};
  l.span = {{{Rational(0), Rational(0), Rational(1), Rational(0)},
             {Rational(0), Rational(0), Rational(0), Rational(1)}}};
  l.name = "L2";
  return l;
}

Line3 line_M() {
  Line3 l;
  l.forms = {{{Rational(1), Rational(0), Rational(-1), Rational(0)},
              {Rational(0), Rational(1), Rational(0), Rational(-1)}}};
  l.span = {{{Rational(1), Rational(0), Rational(1), Rational(0)},
             {Rational(0), Rational(1), Rational(0), Rational(1)}}};
  l.name = "M";
  return l;
}

std::vector<Mono> admissible_quartic_monomials() {
  std::vector<Mono> out;
  for (const Mono& m : monomials_of_degree(4, 4)) {
    int ab = m.e[0] + m.e[1], cd = m.e[2] + m.e[3];
    if (ab >= 1 && cd >= 1) out.push_back(m);
  }
  return out;
}

std::vector<MultiPoly> three_line_quartic_basis() {
  // vanishing on L1 and L2 forces every monomial to involve both {x,y} and
  // {z,w}; vanishing on the diagonal line additionally forces the coefficient
  // sums within each class a+c = const to cancel, so differences against a
  // class representative form a basis
  auto monos = admissible_quartic_monomials();
  std::array<int, 5> rep;
  rep.fill(-1);
  std::vector<MultiPoly> basis;
  for (const auto& m : monos) {
    int k = m.e[0] + m.e[2];
    int idx = -1;
    for (size_t i = 0; i < monos.size(); ++i)
      if (monos[i] == m) {
        idx = static_cast<int>(i);
        break;
      }
    if (rep[k] < 0) {
      rep[k] = idx;
      continue;
    }
    MultiPoly b = MultiPoly::term(4, m, Rational(1));
    b.add_term(monos[static_cast<size_t>(rep[k])], Rational(-1));
    basis.push_back(b);
  }
  return basis;
}

bool contains_line(const MultiPoly& F, const Line3& l) {
  // restrict to the parametrized line and demand the binary quartic vanish
  MultiPoly r(2);
  for (const auto& [m, q] : F.terms()) {
    MultiPoly t = MultiPoly::constant(2, q);
    for (int v = 0; v < 4; ++v) {
      MultiPoly lin =
          l.span[0][v] * MultiPoly::var(2, 0) + l.span[1][v] * MultiPoly::var(2, 1);
      for (int e = 0; e < m.e[v]; ++e) t = t * lin;
    }
    r = r + t;
  }
  return r.is_zero();
}

std::array<Rational, 35> QuarticSurface::full_coefficients() const {
  auto monos = monomials_of_degree(4, 4);
  std::array<Rational, 35> out;
  for (size_t i = 0; i < monos.size(); ++i) {
    auto it = F.terms().find(monos[i]);
    out[i] = it == F.terms().end() ? Rational(0) : it->second;
  }
  return out;
}

QuarticSurface QuarticSurface::from_full_coefficients(const std::array<Rational, 35>& c) {
  auto monos = monomials_of_degree(4, 4);
  MultiPoly F(4);
  for (size_t i = 0; i < monos.size(); ++i)
    if (!c[i].is_zero()) F.add_term(monos[i], c[i]);
  for (const Line3& l : {line_L1(), line_L2(), line_M()})
    if (!contains_line(F, l))
      throw invalid_argument_error("quartic does not vanish on line " + l.name);
  QuarticSurface S;
  S.F = primitive_integer_quartic(F);
  S.id = hash_id(S.full_coefficients());
  return S;
}

QuarticSurface QuarticSurface::from_basis_coefficients(const std::vector<Rational>& c20) {
  auto basis = three_line_quartic_basis();
  if (c20.size() != basis.size())
    throw invalid_argument_error("expected one coefficient per basis quartic");
  MultiPoly F(4);
  for (size_t i = 0; i < basis.size(); ++i) F = F + c20[i] * basis[i];
  if (F.is_zero()) throw invalid_argument_error("zero quartic");
  QuarticSurface S;
  S.F = primitive_integer_quartic(F);
  S.id = hash_id(S.full_coefficients());
  return S;
}

std::string surface_to_text(const QuarticSurface& S) {
  std::ostringstream os;
  os << "three-line-quartic 1\n";
  os << "id " << S.id << "\n";
  os << "seed " << S.seed << "\n";
  os << "coefficients";
  for (const auto& q : S.full_coefficients()) os << " " << q;
  os << "\n";
  for (const Line3& l : {line_L1(), line_L2(), line_M()}) {
    os << "line " << l.name;
    for (const auto& form : l.forms)
      for (const auto& q : form) os << " " << q;
    os << "\n";
  }
  return os.str();
}

QuarticSurface surface_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (tag != "three-line-quartic" || version != 1)
    throw invalid_argument_error("unrecognized surface header");
  std::string key, id;
  uint64_t seed = 0;
  is >> key >> id;
  if (key != "id") throw invalid_argument_error("missing id line");
  is >> key >> seed;
  if (key != "seed") throw invalid_argument_error("missing seed line");
  is >> key;
  if (key != "coefficients") throw invalid_argument_error("missing coefficients line");
  std::array<Rational, 35> c;
  for (auto& q : c) {
    std::string s;
    if (!(is >> s)) throw invalid_argument_error("expected 35 coefficients");
    q = Rational(s);
  }
  QuarticSurface S = QuarticSurface::from_full_coefficients(c);
  S.seed = seed;
  if (S.id != id) throw invalid_argument_error("surface id does not match coefficients");
  return S;
}

namespace {

// --- elimination route -----------------------------------------------------

bool elimination_route(const MultiPoly& F, uint64_t seed, int& shears_tried) {
  for (int k = 0; k < 6; ++k) {
    MultiPoly G = k == 0 ? F : transform_linear(F, unimodular_shear(seed + 0x5eedULL * k));
    std::vector<MultiPoly> parts;
    bool degenerate = false;
    for (int v = 0; v < 4; ++v) {
      parts.push_back(G.derivative(v));
      if (parts.back().is_zero()) degenerate = true;
    }
    if (!degenerate && det_nonzero_mod(macaulay_matrix(parts, {3, 3, 3, 3}, 4))) return true;
    ++shears_tried;
  }
  return false;
}

// --- candidate route -------------------------------------------------------

// restriction of a form to a line, as a polynomial in the parameter of
// span[0] with the span[1] coefficient set to 1
QPoly restrict_to_line(const MultiPoly& P, const Line3& l) {
  int d = P.total_degree();
  std::vector<Rational> c(static_cast<size_t>(d) + 1, Rational(0));
  for (const auto& [m, q] : P.terms()) {
    // expand prod_v (s0_v u + s1_v)^(e_v)
    std::vector<Rational> acc{q};
    for (int v = 0; v < 4; ++v)
      for (int e = 0; e < m.e[v]; ++e) {
        std::vector<Rational> nxt(acc.size() + 1, Rational(0));
        for (size_t i = 0; i < acc.size(); ++i) {
          nxt[i + 1] += acc[i] * l.span[0][v];
          nxt[i] += acc[i] * l.span[1][v];
        }
        acc = std::move(nxt);
      }
    for (size_t i = 0; i < acc.size(); ++i) c[i] += acc[i];
  }
  return QPoly(std::move(c));
}

std::array<Rational, 4> line_point(const Line3& l, const Rational& u, bool at_infinity) {
  std::array<Rational, 4> p;
  for (int v = 0; v < 4; ++v)
    p[v] = at_infinity ? l.span[0][v] : u * l.span[0][v] + l.span[1][v];
  return p;
}

bool gradient_vanishes_exactly(const std::vector<MultiPoly>& parts,
                               const std::array<Rational, 4>& p) {
  std::vector<Rational> xs(p.begin(), p.end());
  for (const auto& g : parts)
    if (!g.eval(xs).is_zero()) return false;
  return true;
}

// 0 = no common zero on the line, 1 = rational witness found, 2 = common zero
// exists but is not rational
int line_singular_check(const std::vector<MultiPoly>& parts, const Line3& l,
                        std::array<Rational, 4>& wit) {
  std::vector<QPoly> restricted;
  bool inf_common = true;
  for (const auto& g : parts) {
    restricted.push_back(restrict_to_line(g, l));
    Rational at_inf(0);
    std::vector<Rational> s0(l.span[0].begin(), l.span[0].end());
    at_inf = g.eval(s0);
    if (!at_inf.is_zero()) inf_common = false;
  }
  if (inf_common) {
    wit = line_point(l, Rational(0), true);
    return 1;
  }
  QPoly g;
  bool all_zero = true;
  for (const auto& r : restricted) {
    if (r.is_zero()) continue;
    all_zero = false;
    g = g.is_zero() ? r : qpoly_gcd(g, r);
  }
  if (all_zero) {
    // every partial vanishes on the whole line
    wit = line_point(l, Rational(0), false);
    return 1;
  }
  if (g.deg() <= 0) return 0;
  QPoly gg = g;
  for (const Rational& r : rational_roots(gg)) {
    wit = line_point(l, r, false);
    return 1;
  }
  return 2;
}

// determinant proxy for the singularity of one plane cubic: Macaulay matrix
// of its three partial quadrics; zero for every singular cubic, nonzero
// certifies smoothness of the cubic
BigInt cubic_proxy_det(const TernForm<Rational>& c) {
  std::vector<MultiPoly> forms;
  for (int v = 0; v < 3; ++v) {
    MultiPoly g = to_multipoly(c.partial(v));
    if (g.is_zero()) return BigInt(0);
    forms.push_back(std::move(g));
  }
  return det_bareiss_int(macaulay_matrix(forms, {2, 2, 2}, 3));
}

std::array<std::array<QPoly, 3>, 3> qpoly_shear3(uint64_t seed) {
  auto S = unimodular_shear3(seed);
  std::array<std::array<QPoly, 3>, 3> T;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) T[i][j] = QPoly(S[i][j]);
  return T;
}

// polynomial in the pencil parameter whose roots contain every parameter with
// a singular fiber; computed by interpolating the per-fiber proxy determinant
QPoly discriminant_proxy(const TernForm<QPoly>& fam, int shear_idx) {
  TernForm<QPoly> f = fam;
  if (shear_idx > 0) f = fam.transform(qpoly_shear3(0xd15cULL + shear_idx));
  int degree_bound = 0;
  for (const auto& q : f.c) degree_bound = std::max(degree_bound, q.deg());
  degree_bound *= 15;  // 15 matrix rows, entries of the coefficient degree
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= degree_bound; ++k) {
    Rational t(k);
    ys.push_back(Rational(cubic_proxy_det(specialize(f, t))));
    xs.push_back(t);
  }
  return qpoly_interpolate(xs, ys);
}

struct ParamRoot {
  bool at_infinity = false;
  RootBox box;
  QPoly sqf;
};

std::vector<ParamRoot> candidate_params(const ResidualCubicFamily& fam, bool& degenerate) {
  QPoly D = discriminant_proxy(fam.main, 0);
  for (int sh = 1; D.is_zero() && sh <= 4; ++sh) D = discriminant_proxy(fam.main, sh);
  if (D.is_zero()) {
    degenerate = true;
    return {};
  }
  std::vector<ParamRoot> out;
  QPoly sf = squarefree_part(D);
  for (const RootBox& b : isolate_roots(sf)) out.push_back({false, b, sf});
  // parameter at infinity: second-chart fiber at 0
  TernForm<Rational> cinf = specialize(fam.inf_chart, Rational(0));
  bool inf_smooth = false;
  for (int sh = 0; sh <= 4 && !inf_smooth; ++sh) {
    TernForm<Rational> c =
        sh == 0 ? cinf : cinf.transform(unimodular_shear3(0xca5cadeULL + sh));
    if (cubic_proxy_det(c) != 0) inf_smooth = true;
  }
  if (!inf_smooth) out.push_back({true, RootBox{}, QPoly{}});
  return out;
}

ComplexApprox box_value(const ParamRoot& r, long bits) {
  if (r.at_infinity) return ComplexApprox(0.0, 0.0, bits);
  RootBox b = r.box;
  refine_root(r.sqf, b, bits);
  return ComplexApprox(b.re.with_prec(bits), b.im.with_prec(bits),
                       b.radius.to_long_double() * 1.0000001L + 1e-4000L);
}

std::array<ComplexApprox, 4> pair_point(int variant, const ComplexApprox& t,
                                        const ComplexApprox& s, const ComplexApprox& a,
                                        const ComplexApprox& b) {
  long prec = std::max(t.prec(), a.prec());
  ComplexApprox zero(0.0, 0.0, prec);
  switch (variant) {
    case 0: return {s * a, a, t * b, b};
    case 1: return {s * a, a, b, zero};       // t at infinity, chart value 0
    case 2: return {a, zero, t * b, b};       // s at infinity
    default: return {a, zero, b, zero};
  }
}

// certified clearance of the two residual intersection points of one pair of
// candidate fibers: 0 cleared, 1 inconclusive, 2 rational witness
int clear_pair(const std::vector<MultiPoly>& parts, const FiberPairQuadratic& Q,
               const ParamRoot& r1, const ParamRoot& r2, long prec_cap,
               std::array<Rational, 4>& wit) {
  for (long prec = 192; prec <= prec_cap; prec *= 2) {
    ComplexApprox t = box_value(r1, prec);
    ComplexApprox s = box_value(r2, prec);
    std::array<ComplexApprox, 3> q;
    for (int i = 0; i < 3; ++i) q[i] = Q.c[i].eval_ca({t, s});
    ComplexApprox disc = q[1] * q[1] - ComplexApprox(4.0, 0.0, prec) * q[0] * q[2];
    ComplexApprox sq = sqrt(disc);
    int variant = (r1.at_infinity ? 1 : 0) + (r2.at_infinity ? 2 : 0);
    // dehomogenize on the side with the certified-nonzero top coefficient;
    // roots at the degenerate ends lie on the axis lines, which the line
    // checks cover
    std::vector<std::array<ComplexApprox, 2>> roots;
    ComplexApprox two(2.0, 0.0, prec);
    ComplexApprox one(1.0, 0.0, prec);
    if (q[0].definitely_nonzero()) {
      roots.push_back({(-q[1] + sq) / (two * q[0]), one});
      roots.push_back({(-q[1] - sq) / (two * q[0]), one});
    } else if (q[2].definitely_nonzero()) {
      roots.push_back({one, (-q[1] + sq) / (two * q[2])});
      roots.push_back({one, (-q[1] - sq) / (two * q[2])});
    } else {
      continue;
    }
    bool all_clear = true;
    for (const auto& r : roots) {
      std::array<ComplexApprox, 4> p = pair_point(variant, t, s, r[0], r[1]);
      bool cleared = false;
      for (const auto& g : parts) {
        if (g.eval_ca({p[0], p[1], p[2], p[3]}).definitely_nonzero()) {
          cleared = true;
          break;
        }
      }
      if (!cleared) all_clear = false;
    }
    if (all_clear) return 0;
  }
  // exact fallback for rational parameters in the main charts
  if (!r1.at_infinity && !r2.at_infinity && r1.box.has_exact && r2.box.has_exact) {
    Rational t = r1.box.exact_value, s = r2.box.exact_value;
    std::array<Rational, 3> q;
    for (int i = 0; i < 3; ++i) q[i] = Q.c[i].eval({t, s});
    QPoly quad({q[2], q[1], q[0]});
    if (quad.is_zero()) return 1;  // whole line inside the surface
    QPoly qq = quad;
    for (const Rational& u : rational_roots(qq)) {
      std::array<Rational, 4> p = {s * u, u, t, Rational(1)};
      if (gradient_vanishes_exactly(parts, p)) {
        wit = p;
        return 2;
      }
    }
    if (qq.deg() <= 0) return 0;  // fully split into cleared rational roots
  }
  return 1;
}

}  // namespace

SmoothnessReport certify_smooth(const QuarticSurface& S, long prec_cap) {
  SmoothnessReport rep;
  std::vector<MultiPoly> parts;
  for (int v = 0; v < 4; ++v) parts.push_back(S.F.derivative(v));

  rep.elimination_pass = elimination_route(S.F, fnv1a(S.id), rep.shears_tried);

  // exact checks on the three lines
  for (const Line3& l : {line_L1(), line_L2(), line_M()}) {
    int st = line_singular_check(parts, l, rep.witness);
    if (st == 1) {
      rep.status = SmoothStatus::singular_with_witness;
      rep.detail = "singular point on line " + l.name;
      return rep;
    }
    if (st == 2) {
      rep.detail = "nonrational singular point on line " + l.name;
      return rep;
    }
  }

  // candidate points away from the lines lie on fibers that are singular in
  // both pencils, so pairs of proxy-discriminant roots cover them
  ResidualCubicFamily fam1 = residual_cubic(S, 1);
  ResidualCubicFamily fam2 = residual_cubic(S, 2);
  bool degen = false;
  std::vector<ParamRoot> roots1 = candidate_params(fam1, degen);
  if (degen) {
    rep.detail = "first pencil has identically singular fibers";
    return rep;
  }
  std::vector<ParamRoot> roots2 = candidate_params(fam2, degen);
  if (degen) {
    rep.detail = "second pencil has identically singular fibers";
    return rep;
  }

  std::array<std::array<FiberPairQuadratic, 2>, 2> Q;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) Q[a][b] = fiber_pair_quadratic(S, a == 1, b == 1);

  for (const ParamRoot& r1 : roots1)
    for (const ParamRoot& r2 : roots2) {
      ++rep.candidates_checked;
      int st = clear_pair(parts, Q[r1.at_infinity ? 1 : 0][r2.at_infinity ? 1 : 0], r1, r2,
                          prec_cap, rep.witness);
      if (st == 2) {
        rep.status = SmoothStatus::singular_with_witness;
        rep.detail = "singular point on a candidate fiber pair";
        return rep;
      }
      if (st == 1) {
        rep.detail = "could not clear a candidate fiber pair";
        return rep;
      }
    }

  rep.candidate_pass = true;
  if (rep.elimination_pass) rep.status = SmoothStatus::certified_smooth;
  return rep;
}

QuarticSurface build_three_line_quartic(uint64_t seed, long bound, int max_attempts,
                                        ConstructionDiagnostics* diag) {
  if (bound < 1) throw invalid_argument_error("coefficient bound must be at least 1");
  ConstructionDiagnostics local;
  ConstructionDiagnostics& d = diag ? *diag : local;
  auto basis = three_line_quartic_basis();
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ++d.attempts;
    std::vector<Rational> c;
    c.reserve(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) c.emplace_back(rng.next_in(-bound, bound));
    QuarticSurface S;
    try {
      S = QuarticSurface::from_basis_coefficients(c);
    } catch (const invalid_argument_error&) {
      continue;  // all-zero draw
    }
    S.seed = seed;
    // fast filter before the full certificate
    int shears = 0;
    if (!elimination_route(S.F, fnv1a(S.id), shears)) {
      ++d.rejected_resultant;
      continue;
    }
    SmoothnessReport rep = certify_smooth(S);
    if (rep.status != SmoothStatus::certified_smooth) {
      if (rep.detail.find("identically singular") != std::string::npos)
        ++d.rejected_degenerate;
      else
        ++d.rejected_certify;
      continue;
    }
    return S;
  }
  std::ostringstream os;
  os << "no certified surface after " << d.attempts << " attempts (resultant filter "
     << d.rejected_resultant << ", degenerate pencils " << d.rejected_degenerate
     << ", certificate " << d.rejected_certify << ")";
  throw construction_failed_error(os.str());
}

}  // namespace bifib
