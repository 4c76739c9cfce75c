#include "bifib/heights.hpp"

#include <json.hpp>

#include <algorithm>
#include <bitset>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace bifib {

namespace {

namespace bmp = boost::multiprecision;

constexpr double kLogSlop = 4e-16;  // relative slop of log on a double mantissa

double logplus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

double log_bigint(const BigInt& n) {
  if (n == 0) throw invalid_argument_error("log of zero");
  long e = 0;
  double d = mpz_get_d_2exp(&e, n.backend().data());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

HeightValue naive_height(const std::vector<Rational>& coords) {
  BigInt den(1);
  bool any = false;
  for (const auto& c : coords)
    if (!c.is_zero()) {
      any = true;
      den = bmp::lcm(den, BigInt(bmp::denominator(c)));
    }
  if (!any) throw invalid_argument_error("projective point has no nonzero coordinate");
  BigInt g(0), big(0);
  std::vector<BigInt> ints;
  ints.reserve(coords.size());
  for (const auto& c : coords) {
    Rational scaled = c * Rational(den);
    ints.push_back(BigInt(bmp::numerator(scaled)));
    if (!c.is_zero()) g = bmp::gcd(g, ints.back());
  }
  for (const auto& z : ints) {
    BigInt a = bmp::abs(z) / g;
    if (a > big) big = a;
  }
  double v = big == 1 ? 0.0 : log_bigint(big);
  return {v, std::fabs(v) * kLogSlop + 1e-18};
}

HeightValue naive_height(const std::vector<std::vector<ComplexApprox>>& embeddings) {
  if (embeddings.empty()) throw invalid_argument_error("no embeddings supplied");
  double lo_sum = 0.0, hi_sum = 0.0;
  for (const auto& row : embeddings) {
    if (row.size() != embeddings.front().size() || row.empty())
      throw invalid_argument_error("embedding rows must share a positive length");
    long double hi = 0.0L, lo = 0.0L;
    for (const auto& z : row) {
      long double m = z.mag();
      hi = std::max(hi, m + z.err());
      lo = std::max(lo, m - z.err());
    }
    if (lo <= 0.0L)
      throw precision_exhausted("an embedding row is indistinguishable from zero");
    lo_sum += static_cast<double>(std::log(lo));
    hi_sum += static_cast<double>(std::log(hi));
  }
  double n = static_cast<double>(embeddings.size());
  double v = (lo_sum + hi_sum) / (2.0 * n);
  double e = (hi_sum - lo_sum) / (2.0 * n) + 1e-15;
  return {std::max(0.0, v), e};
}

// ---------------------------------------------------------------------------
// Mahler measure from certified root boxes

namespace {

std::pair<double, double> mahler_interval(const IntPoly& f, long prec_cap) {
  if (f.is_zero() || f.deg() < 1)
    throw invalid_argument_error("Mahler measure needs a nonconstant polynomial");
  QPoly qf = to_qpoly(f);
  BigFloat rad(1.0, 64);
  mpfr_mul_2si(rad.raw(), rad.raw(), -48, MPFR_RNDN);
  auto boxes = isolate_roots_within(qf, rad, prec_cap);
  double mid = log_bigint(bmp::abs(f.c.back()));
  double err = std::fabs(mid) * kLogSlop;
  for (const auto& b : boxes) {
    double c = hypot(b.re, b.im).to_double();
    double r = b.radius.to_double();
    double hi = logplus(c + r), lo = logplus(std::max(0.0, c - r));
    mid += b.multiplicity * (hi + lo) / 2.0;
    err += b.multiplicity * ((hi - lo) / 2.0 + 1e-15);
  }
  return {mid, err};
}

}  // namespace

double log_mahler_measure(const IntPoly& f, long prec_cap) {
  return mahler_interval(f, prec_cap).first;
}

HeightValue mahler_height(const IntPoly& f, long prec_cap) {
  auto [m, e] = mahler_interval(f, prec_cap);
  double d = static_cast<double>(f.deg());
  return {std::max(0.0, m / d), e / d + 1e-16};
}

// ---------------------------------------------------------------------------
// mod-p degree patterns as an irreducibility certificate

namespace {

using ModPoly = std::vector<uint64_t>;

void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int mp_deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

uint64_t scalar_pow(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

ModPoly mp_monic(ModPoly a, uint64_t p) {
  if (a.empty() || a.back() == 1) return a;
  uint64_t iv = scalar_pow(a.back(), p - 2, p);
  for (auto& x : a) x = x * iv % p;
  return a;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  mp_trim(c);
  return c;
}

// remainder by a monic divisor
ModPoly mp_rem(ModPoly a, const ModPoly& b, uint64_t p) {
  int db = mp_deg(b);
  if (db <= 0) return {};
  while (mp_deg(a) >= db) {
    uint64_t c = a.back();
    int shift = mp_deg(a) - db;
    if (c)
      for (int i = 0; i < db; ++i) {
        uint64_t t = c * b[static_cast<size_t>(i)] % p;
        a[static_cast<size_t>(shift + i)] = (a[static_cast<size_t>(shift + i)] + p - t) % p;
      }
    a.pop_back();
    mp_trim(a);
  }
  return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, uint64_t p) {
  while (!b.empty()) {
    ModPoly m = mp_monic(b, p);
    ModPoly r = mp_rem(std::move(a), m, p);
    a = std::move(m);
    b = std::move(r);
  }
  return mp_monic(std::move(a), p);
}

// quotient by a monic exact divisor
ModPoly mp_div_exact(ModPoly a, const ModPoly& b, uint64_t p) {
  int db = mp_deg(b);
  if (db == 0) return a;
  if (mp_deg(a) < db) return {};
  ModPoly q(static_cast<size_t>(mp_deg(a) - db) + 1, 0);
  while (mp_deg(a) >= db) {
    uint64_t c = a.back();
    int shift = mp_deg(a) - db;
    q[static_cast<size_t>(shift)] = c;
    if (c)
      for (int i = 0; i < db; ++i) {
        uint64_t t = c * b[static_cast<size_t>(i)] % p;
        a[static_cast<size_t>(shift + i)] = (a[static_cast<size_t>(shift + i)] + p - t) % p;
      }
    a.pop_back();
    mp_trim(a);
  }
  mp_trim(q);
  return q;
}

ModPoly mp_powmod(ModPoly h, uint64_t e, const ModPoly& g, uint64_t p) {
  ModPoly r = {1};
  h = mp_rem(std::move(h), g, p);
  while (e) {
    if (e & 1) r = mp_rem(mp_mul(r, h, p), g, p);
    h = mp_rem(mp_mul(h, h, p), g, p);
    e >>= 1;
  }
  return r;
}

ModPoly mp_deriv(const ModPoly& a, uint64_t p) {
  ModPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * (i % p) % p);
  mp_trim(d);
  return d;
}

// irreducible factor degrees of a monic squarefree g, with repetition
std::vector<int> ddf_pattern(ModPoly g, uint64_t p) {
  std::vector<int> out;
  ModPoly h = mp_rem({0, 1}, g, p);
  int d = 0;
  while (mp_deg(g) > 0 && 2 * (d + 1) <= mp_deg(g)) {
    ++d;
    h = mp_powmod(std::move(h), p, g, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    mp_trim(hx);
    ModPoly r = mp_gcd(hx, g, p);
    if (mp_deg(r) > 0) {
      for (int i = 0; i < mp_deg(r) / d; ++i) out.push_back(d);
      g = mp_div_exact(std::move(g), r, p);
      h = mp_rem(std::move(h), g, p);
    }
  }
  if (mp_deg(g) > 0) out.push_back(mp_deg(g));
  return out;
}

ModPoly reduce_mod(const IntPoly& f, uint64_t p) {
  ModPoly a(f.c.size());
  BigInt bp(p);
  for (size_t i = 0; i < f.c.size(); ++i) {
    BigInt r = f.c[i] % bp;
    if (r < 0) r += bp;
    a[i] = r.convert_to<uint64_t>();
  }
  mp_trim(a);
  return a;
}

}  // namespace

bool certify_irreducible(const IntPoly& f) {
  int n = f.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (n > 500) return false;
  QPoly qf = to_qpoly(f);
  if (qpoly_gcd(qf, qf.derivative()).deg() > 0) return false;  // repeated factor
  static const uint64_t primes[] = {1000003, 1000033, 1000037, 1000039,
                                    1000081, 1000099, 1000117, 1000121};
  std::bitset<512> acc;
  bool first = true;
  for (uint64_t p : primes) {
    ModPoly fp = reduce_mod(f, p);
    if (mp_deg(fp) != n) continue;  // leading coefficient vanished
    ModPoly g = mp_monic(std::move(fp), p);
    if (mp_deg(mp_gcd(g, mp_deriv(g, p), p)) > 0) continue;  // not squarefree here
    std::bitset<512> pos;
    pos.set(0);
    for (int d : ddf_pattern(g, p)) pos |= pos << d;
    acc = first ? pos : (acc & pos);
    first = false;
    bool proper = false;
    for (int d = 1; d < n && !proper; ++d) proper = acc.test(static_cast<size_t>(d));
    if (!proper) return true;  // no proper factor degree survives the sieve
  }
  return false;
}

// ---------------------------------------------------------------------------
// canonical heights by exact x-coordinate doubling

HeightValue canonical_height(const ShortCurve<Rational>& E, const EPoint<Rational>& P,
                             double tol, DoublingTrace* trace) {
  if (!(tol > 0.0)) throw invalid_argument_error("tolerance must be positive");
  if (kzero(E.disc())) throw invalid_argument_error("curve is singular");
  if (!on_curve(E, P)) throw invalid_argument_error("point is not on the curve");
  if (trace) *trace = DoublingTrace{};
  if (P.infinity) return {0.0, 0.0};

  // integral rescaling (x, y) -> (u^2 x, u^3 y) shifts the naive height by a
  // bounded amount, so the limit is unchanged
  BigInt u = bmp::lcm(BigInt(bmp::denominator(E.A)), BigInt(bmp::denominator(E.B)));
  Rational u2(u * u);
  BigInt Az(bmp::numerator(Rational(E.A * u2 * u2)));
  BigInt Bz(bmp::numerator(Rational(E.B * u2 * u2 * u2)));
  Rational x0 = P.x * u2;
  BigInt p(bmp::numerator(x0)), q(bmp::denominator(x0));

  std::set<std::pair<BigInt, BigInt>> seen;
  const long bit_cap = 1L << 27;
  const double inf = std::numeric_limits<double>::infinity();
  double h_prev = 0.0, L_prev = 0.0, dL_prev = inf;
  for (int n = 0; n <= 48; ++n) {
    BigInt m = bmp::abs(p);
    if (q > m) m = q;
    double h = m == 1 ? 0.0 : log_bigint(m);
    if (n >= 1) {
      // scaled height with the geometric tail folded in: constant defect terms
      // cancel, so this converges like 4^{-n} times a bounded oscillation
      double L = (h - h_prev) / (3.0 * std::pow(4.0, n - 1));
      double dL = std::fabs(L - L_prev);
      if (n >= 3 && dL < tol / 2.0 && dL_prev < 2.0 * tol) {
        if (trace) {
          trace->steps = n;
          trace->last_defect = std::fabs(h - 4.0 * h_prev);
        }
        return {L, dL + dL_prev / 4.0 + std::fabs(L) * kLogSlop + 1e-15};
      }
      L_prev = L;
      dL_prev = dL;
    }
    if (static_cast<long>(bmp::msb(m)) > bit_cap || n == 48)
      throw precision_exhausted("canonical height did not stabilize under the size cap");
    if (!seen.insert({p, q}).second) {
      // the doubling orbit revisited a point: torsion, so the limit is 0
      if (trace) {
        trace->steps = n;
        trace->cycled = true;
      }
      return {0.0, 0.0};
    }
    BigInt p2 = p * p, q2 = q * q, pq = p * q;
    BigInt F = p2 * p2 - 2 * Az * p2 * q2 - 8 * Bz * pq * q2 + Az * Az * q2 * q2;
    BigInt G = 4 * q * (p * p2 + Az * pq * q + Bz * q * q2);
    if (G == 0) {
      // the orbit reached 2-torsion and falls onto the origin
      if (trace) {
        trace->steps = n;
        trace->cycled = true;
      }
      return {0.0, 0.0};
    }
    BigInt g = bmp::gcd(F, G);
    p = F / g;
    q = G / g;
    if (q < 0) {
      p = -p;
      q = -q;
    }
    h_prev = h;
  }
  throw precision_exhausted("canonical height did not stabilize under the step cap");
}

SymmetrizedHeight symmetrized_canonical_height(const ShortCurve<Rational>& E,
                                               const EPoint<Rational>& P, double tol) {
  // the x-coordinate height is even, h(-Q) = h(Q), so the skew limit
  // 2^{-n} (h(2^n P) - h(-2^n P)) vanishes term by term and the symmetric
  // limit is twice the plain canonical height
  SymmetrizedHeight out;
  HeightValue h = canonical_height(E, P, tol / 2.0);
  out.skew = {0.0, 0.0};
  out.sym = {2.0 * h.value, 2.0 * h.error};
  out.total = h;
  return out;
}

HeightValue parallelogram_residual(const ShortCurve<Rational>& E, const EPoint<Rational>& x,
                                   const EPoint<Rational>& y, double tol) {
  EPoint<Rational> s = ec_add(E, x, y);
  EPoint<Rational> d = ec_add(E, x, ec_neg(y));
  double t = tol / 6.0;
  HeightValue hs = canonical_height(E, s, t);
  HeightValue hd = canonical_height(E, d, t);
  HeightValue hx = canonical_height(E, x, t);
  HeightValue hy = canonical_height(E, y, t);
  HeightValue hyn = canonical_height(E, ec_neg(y), t);
  // signed residual, not a height; the carrier just keeps value and error together
  double v = hs.value + hd.value - 2.0 * hx.value - hy.value - hyn.value;
  double e = hs.error + hd.error + 2.0 * hx.error + hy.error + hyn.error + 1e-14;
  return {v, e};
}

// ---------------------------------------------------------------------------
// bound calculators

namespace {

BoundReport power_bound(int g, long d, double m, long expnt) {
  BoundReport r;
  r.g = g;
  r.d = d;
  r.hterm = m;
  BigInt core = bmp::pow(BigInt(14 * g), static_cast<unsigned>(64 * g * g)) * d;
  double log2_core = log_bigint(core) / std::log(2.0);
  double log2_m = m > 1.0 ? std::log2(m) : 0.0;
  double bits_est = static_cast<double>(expnt) * (log2_core + 2.0 * log2_m);
  if (bits_est > static_cast<double>(1L << 28))
    throw invalid_argument_error("exact bound exceeds the supported size");
  if (m == 1.0) {
    r.value = bmp::pow(core, static_cast<unsigned>(expnt));
    r.exact = true;
    r.log10_value = log10(BigFloat(r.value, 192)).to_double();
  } else {
    long prec = static_cast<long>(bits_est) + 64;
    BigFloat base(core, prec);
    BigFloat mf(m, prec);
    base *= mf * mf;
    BigFloat v = pow_ui(base, static_cast<unsigned long>(expnt));
    BigInt z;
    mpfr_get_z(z.backend().data(), v.raw(), MPFR_RNDU);  // keep it an upper bound
    r.value = z;
    r.exact = false;
    r.log10_value =
        (BigFloat(expnt, 192) * log10(base.with_prec(192))).to_double();
  }
  return r;
}

void check_bound_args(int g, long d) {
  if (g < 1) throw invalid_argument_error("dimension must be positive");
  if (d < 1) throw invalid_argument_error("field degree must be positive");
}

}  // namespace

BoundReport torsion_order_bound(int g, long d, double h, double c, double C) {
  check_bound_args(g, d);
  if (h < 0.0) throw invalid_argument_error("height term must be non-negative");
  double m = std::max({1.0, c * h + C, std::log(static_cast<double>(d))});
  return power_bound(g, d, m, 2240L * g * g * g);
}

std::pair<BoundReport, BoundReport> remond_kappa(int g, long d, double hF) {
  check_bound_args(g, d);
  if (hF < 0.0) throw invalid_argument_error("height term must be non-negative");
  double m = std::max({1.0, hF, std::log(static_cast<double>(d))});
  long kappa_e = 1024L * g * g * g;
  // kappa^{35/16} has the integer exponent 2240 g^3; kappa^{4g+1} is direct.
  // The cardinality bound is the larger, so its size guard runs first.
  BoundReport card = power_bound(g, d, m, kappa_e * (4L * g + 1L));
  return {power_bound(g, d, m, 2240L * g * g * g), std::move(card)};
}

BigInt remond_constant(int g) {
  if (g < 1) throw invalid_argument_error("dimension must be positive");
  return BigInt(6720) * g * g * g;  // 3 * 35840 g^3 / 16
}

double isogeny_height_delta(const BigInt& deg) {
  if (deg < 1) throw invalid_argument_error("isogeny degree must be positive");
  return 0.5 * log_bigint(deg);
}

// ---------------------------------------------------------------------------
// torsion value height survey

TorsionHeightSurvey torsion_height_survey(const FiberFamily& F, int m_max, long prec_cap) {
  if (m_max < 1) throw invalid_argument_error("survey order cap must be positive");
  TorsionHeightSurvey out;
  out.axis = F.axis;
  out.m_max = m_max;
  out.running_max.assign(static_cast<size_t>(m_max), std::numeric_limits<double>::quiet_NaN());
  double cur = 0.0;
  bool have = false;
  for (int m = 1; m <= m_max; ++m) {
    QPoly T;
    try {
      T = exact_order_value_polynomial(F, m);
    } catch (const section_torsion_error&) {
      out.section_torsion_orders.push_back(m);
      T = QPoly();
    }
    if (!T.is_zero() && T.deg() >= 1) {
      for (auto& [sq, mult] : yun_squarefree(T)) {
        (void)mult;  // repeated parameters carry no new height
        QPoly beta = sq;
        for (const Rational& r : rational_roots(beta)) {
          TorsionValueHeightRow row;
          row.order = m;
          row.degree = 1;
          row.irreducible = true;
          BigInt pn(bmp::numerator(r)), pd(bmp::denominator(r));
          row.annihilator.c = {BigInt(-pn), pd};
          BigInt mx = bmp::abs(pn);
          if (pd > mx) mx = pd;
          double v = mx == 1 ? 0.0 : log_bigint(mx);
          row.height = {v, std::fabs(v) * kLogSlop + 1e-18};
          cur = have ? std::max(cur, row.height.value) : row.height.value;
          have = true;
          out.rows.push_back(std::move(row));
        }
        if (beta.deg() >= 1) {
          TorsionValueHeightRow row;
          row.order = m;
          row.annihilator = to_int_primitive(beta);
          row.degree = row.annihilator.deg();
          row.irreducible = certify_irreducible(row.annihilator);
          row.height = mahler_height(row.annihilator, prec_cap);
          cur = have ? std::max(cur, row.height.value) : row.height.value;
          have = true;
          out.rows.push_back(std::move(row));
        }
      }
    }
    if (have) out.running_max[static_cast<size_t>(m - 1)] = cur;
  }
  return out;
}

std::string survey_json(const TorsionHeightSurvey& s) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["axis"] = s.axis;
  j["m_max"] = s.m_max;
  j["section_torsion_orders"] = s.section_torsion_orders;
  auto rows = nlohmann::json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"order", r.order},
                    {"degree", r.degree},
                    {"annihilator", qpoly_str(to_qpoly(r.annihilator), "s")},
                    {"irreducible", r.irreducible},
                    {"height", r.height.value},
                    {"height_error", r.height.error}});
  }
  j["rows"] = rows;
  auto rm = nlohmann::json::array();
  for (double v : s.running_max) {
    if (std::isnan(v))
      rm.push_back(nullptr);
    else
      rm.push_back(v);
  }
  j["running_max"] = rm;
  return j.dump(2);
}

std::string survey_csv(const TorsionHeightSurvey& s) {
  std::ostringstream os;
  os << "order,degree,annihilator,irreducible,height,height_error\n";
  os.precision(17);
  for (const auto& r : s.rows)
    os << r.order << ',' << r.degree << ',' << qpoly_str(to_qpoly(r.annihilator), "s") << ','
       << (r.irreducible ? 1 : 0) << ',' << r.height.value << ',' << r.height.error << '\n';
  return os.str();
}

}  // namespace bifib
