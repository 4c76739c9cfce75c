#include "bifib/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace bifib {

namespace {

using CD = std::complex<double>;

// double-precision coefficients scaled by a common power of two so the
// largest magnitude is near one; roots are unchanged by uniform scaling
std::vector<CD> scaled_double_coeffs(const IntPoly& f) {
  long maxbits = 0;
  for (const auto& c : f.c)
    if (c != 0)
      maxbits = std::max(maxbits,
                         static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(c))));
  std::vector<CD> out(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    BigFloat v(f.c[i], 128);
    mpfr_mul_2si(v.raw(), v.raw(), -maxbits, MPFR_RNDN);
    out[i] = CD(v.to_double(), 0.0);
  }
  return out;
}

CD horner(const std::vector<CD>& c, CD z, CD* dp = nullptr) {
  CD p(0.0, 0.0), d(0.0, 0.0);
  for (size_t i = c.size(); i-- > 0;) {
    d = d * z + p;
    p = p * z + c[i];
  }
  if (dp) *dp = d;
  return p;
}

// Fujiwara bound 2 max_k |c_{n-k}/c_n|^{1/k}; the k-th root keeps a small
// leading coefficient from inflating the radius the way the Cauchy bound does
double fujiwara_radius(const std::vector<CD>& c) {
  size_t n = c.size() - 1;
  double lg_lead = std::log2(std::abs(c[n]));
  double lg = -1074.0;
  for (size_t i = 0; i < n; ++i) {
    if (c[i] == CD(0.0, 0.0)) continue;
    lg = std::max(lg, (std::log2(std::abs(c[i])) - lg_lead) / static_cast<double>(n - i));
  }
  double r = 2.0 * std::exp2(lg);
  if (!std::isfinite(r) || r <= 0) r = 2.0;
  return std::min(r, 1e12);
}

// Aberth-Ehrlich sweeps in double precision; these only seed the certified
// refinement, so stalls are tolerable
std::vector<CD> aberth_double(const std::vector<CD>& c, int salt) {
  size_t n = c.size() - 1;
  double hi = fujiwara_radius(c);
  std::vector<CD> rev(c.rbegin(), c.rend());
  while (rev.size() > 1 && rev.back() == CD(0.0, 0.0)) rev.pop_back();
  double lo = rev.size() > 1 ? 0.5 / fujiwara_radius(rev) : hi * 1e-6;
  if (!(lo > 0) || lo > hi) lo = hi * 1e-6;
  std::vector<CD> z(n);
  for (size_t k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * (static_cast<double>(k) / n + 0.3183 / n) + 0.2 + 0.77 * salt;
    // geometric spread across the annulus that provably contains every root,
    // decorrelated from the angle by the golden ratio
    double u = std::fmod(0.6180339887498949 * static_cast<double>(k) + 0.11 * salt, 1.0);
    double rad = lo * std::pow(hi / lo, 0.02 + 0.96 * u);
    z[k] = CD(rad * std::cos(th), rad * std::sin(th));
  }
  for (int sweep = 0; sweep < 1200; ++sweep) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      CD d;
      CD p = horner(c, z[i], &d);
      if (p == CD(0.0, 0.0)) continue;
      CD w = (d == CD(0.0, 0.0)) ? CD(1e-12, 1e-12) : p / d;
      CD s(0.0, 0.0);
      for (size_t j = 0; j < n; ++j)
        if (j != i) {
          CD diff = z[i] - z[j];
          if (std::abs(diff) < 1e-280) diff = CD(1e-280, 1e-280);
          s += 1.0 / diff;
        }
      CD denom = 1.0 - w * s;
      CD corr = (denom == CD(0.0, 0.0)) ? w : w / denom;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-13) break;
  }
  return z;
}

// fixed-precision complex arithmetic for the escalated Aberth fallback; no
// error tracking, the certified stage re-derives everything afterwards
struct MX {
  BigFloat re, im;
};

MX mx_div(const MX& a, const MX& b) {
  BigFloat n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
double mx_mag(const MX& a) { return hypot(a.re, a.im).to_double(); }

std::vector<MX> to_mx(const std::vector<CD>& v) {
  std::vector<MX> out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = {BigFloat(v[i].real(), 64), BigFloat(v[i].imag(), 64)};
  return out;
}

// Aberth sweeps at explicit precision, seeded from the double-precision pass;
// this resolves roots whose condition number exceeds double precision
std::vector<MX> aberth_mpfr(const IntPoly& f, const std::vector<CD>& init, long prec, int salt) {
  size_t n = f.c.size() - 1;
  std::vector<MX> c(n + 1);
  for (size_t i = 0; i <= n; ++i) c[i] = {BigFloat(f.c[i], prec), BigFloat(0.0, prec)};
  std::vector<MX> z(n);
  for (size_t k = 0; k < n; ++k) {
    double jr = 1.0 + 3e-3 * salt * std::cos(2.1 * static_cast<double>(k) + salt);
    double ji = 3e-3 * salt * std::sin(1.7 * static_cast<double>(k) + 2.0 * salt);
    z[k] = {BigFloat(init[k].real() * jr, prec), BigFloat(init[k].imag() + ji, prec)};
  }
  const double stop = std::exp2(-0.6 * static_cast<double>(std::min(prec, 4000L)));
  for (int sweep = 0; sweep < 240; ++sweep) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      MX p{BigFloat(0.0, prec), BigFloat(0.0, prec)};
      MX d = p;
      for (size_t ci = n + 1; ci-- > 0;) {
        d = {d.re * z[i].re - d.im * z[i].im + p.re, d.re * z[i].im + d.im * z[i].re + p.im};
        p = {p.re * z[i].re - p.im * z[i].im + c[ci].re,
             p.re * z[i].im + p.im * z[i].re + c[ci].im};
      }
      if (p.re == BigFloat(0.0, 64) && p.im == BigFloat(0.0, 64)) continue;
      bool dz = d.re == BigFloat(0.0, 64) && d.im == BigFloat(0.0, 64);
      MX w = dz ? MX{BigFloat(1e-12, prec), BigFloat(1e-12, prec)} : mx_div(p, d);
      MX s{BigFloat(0.0, prec), BigFloat(0.0, prec)};
      MX one{BigFloat(1.0, prec), BigFloat(0.0, prec)};
      for (size_t j = 0; j < n; ++j)
        if (j != i) {
          MX diff{z[i].re - z[j].re, z[i].im - z[j].im};
          if (mx_mag(diff) == 0.0) diff = {BigFloat(1e-300, prec), BigFloat(1e-300, prec)};
          MX r = mx_div(one, diff);
          s = {s.re + r.re, s.im + r.im};
        }
      MX denom{one.re - (w.re * s.re - w.im * s.im), -(w.re * s.im + w.im * s.re)};
      MX corr = mx_mag(denom) == 0.0 ? w : mx_div(w, denom);
      z[i] = {z[i].re - corr.re, z[i].im - corr.im};
      worst = std::max(worst, mx_mag(corr) / (1.0 + mx_mag(z[i])));
    }
    if (worst < stop) break;
  }
  return z;
}

struct CaEval {
  ComplexApprox val;
  long double upper;
  long double lower;
};

CaEval eval_bounds(const QPoly& f, const ComplexApprox& z) {
  ComplexApprox v = qpoly_eval_ca(f, z);
  long double m = v.mag();
  return {v, m + v.err(), m - v.err()};
}

struct CertifyResult {
  std::vector<RootBox> boxes;  // empty unless fully certified
  // true when more working precision could plausibly help; false means the
  // polished centers coincide, so the seeds fell into the same basin
  bool retry_higher = false;
};

// Newton polish + inclusion-disk certification for one squarefree factor
CertifyResult certify_factor(const QPoly& h, const std::vector<MX>& seeds, long prec) {
  size_t n = static_cast<size_t>(h.deg());
  QPoly hp = h.derivative();
  CertifyResult res;
  std::vector<RootBox>& boxes = res.boxes;
  boxes.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    ComplexApprox z(seeds[i].re.with_prec(prec), seeds[i].im.with_prec(prec), 0.0L);
    for (int it = 0; it < 64; ++it) {
      ComplexApprox pv = qpoly_eval_ca(h, z);
      ComplexApprox dv = qpoly_eval_ca(hp, z);
      if (!dv.definitely_nonzero()) break;
      ComplexApprox step = pv / dv;
      z = ComplexApprox(z.re() - step.re(), z.im() - step.im(), 0.0L);
      if (step.mag() < std::pow(0.5L, static_cast<long double>(std::min(prec, 4000L)) * 0.55L) *
                           (1.0L + z.mag()))
        break;
    }
    CaEval pv = eval_bounds(h, z);
    CaEval dv = eval_bounds(hp, z);
    if (dv.lower <= 0.0L) {
      res.boxes.clear();
      res.retry_higher = true;
      return res;
    }
    // a disk of radius n|p/p'| around z contains at least one root
    long double rad = static_cast<long double>(n) * pv.upper / dv.lower;
    RootBox box;
    box.re = z.re();
    box.im = z.im();
    box.radius = BigFloat(static_cast<double>(rad * 1.000001L + 1e-320L), 64);
    boxes.push_back(std::move(box));
  }
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j)
      if (!boxes_disjoint(boxes[i], boxes[j])) {
        // centers closer than the Newton resolution of this precision mean two
        // seeds polished onto one root; fresh seeds are needed, not precision
        BigFloat d = hypot(boxes[i].re - boxes[j].re, boxes[i].im - boxes[j].im);
        double lg = mpfr_zero_p(d.raw()) ? -1e30 : static_cast<double>(mpfr_get_exp(d.raw()));
        double scale = 1.0 + std::max(std::fabs(boxes[i].re.to_double()),
                                      std::fabs(boxes[j].re.to_double()));
        double resol = -0.55 * static_cast<double>(std::min(prec, 4000L)) +
                       std::log2(16.0 * static_cast<double>(n) * scale);
        res.retry_higher = lg >= resol;
        res.boxes.clear();
        return res;
      }
  // n pairwise disjoint disks, each holding >= 1 of the n roots: exactly one each
  return res;
}

// certify realness by an exact sign change on a rational interval that is
// provably free of the other roots
void mark_real_roots(const QPoly& h, std::vector<RootBox>& boxes) {
  for (size_t bi = 0; bi < boxes.size(); ++bi) {
    RootBox& b = boxes[bi];
    if (b.has_exact || b.certified_real) continue;
    if (abs(b.im) > b.radius) continue;
    long k = 0;
    BigFloat r2 = b.radius;
    while (r2 < BigFloat(0.25, 64) && k < 4000) {
      mpfr_mul_2si(r2.raw(), r2.raw(), 1, MPFR_RNDN);
      ++k;
    }
    BigFloat scaled = b.re;
    mpfr_mul_2si(scaled.raw(), scaled.raw(), k, MPFR_RNDN);
    Rational center(scaled.to_bigint_nearest());
    Rational twoK = rational_pow2(k);
    Rational lo = (center - 2) / twoK, hi = (center + 2) / twoK;
    // the interval must not meet any other box, otherwise a sign change
    // could certify a neighbor's root instead of this one
    bool clean = true;
    BigFloat blo(lo, 128), bhi(hi, 128);
    for (size_t bj = 0; bj < boxes.size() && clean; ++bj) {
      if (bj == bi) continue;
      const RootBox& o = boxes[bj];
      if (abs(o.im) > o.radius) continue;  // disk misses the axis entirely
      if (o.re + o.radius >= blo && o.re - o.radius <= bhi) clean = false;
    }
    if (!clean) continue;
    Rational flo = h.eval_k(lo), fhi = h.eval_k(hi);
    if (flo.is_zero() || fhi.is_zero()) {
      // interval endpoint is the root itself
      b.certified_real = true;
      b.im = BigFloat(0.0, b.im.prec());
      continue;
    }
    if ((flo > 0) != (fhi > 0)) {
      b.certified_real = true;
      b.im = BigFloat(0.0, b.im.prec());
    }
  }
}

}  // namespace

BigFloat rational_center_radius(const Rational& q, const BigFloat& center) {
  Rational err = q - center.to_rational_exact();
  if (err.is_zero()) return BigFloat(0.0, 64);
  if (err < 0) err = -err;
  return BigFloat(err * Rational(1025, 1024), 96);
}

bool boxes_disjoint(const RootBox& a, const RootBox& b) {
  BigFloat d = hypot(a.re - b.re, a.im - b.im);
  return d > a.radius + b.radius;
}

bool box_contains(const RootBox& box, const ComplexApprox& z) {
  BigFloat d = hypot(box.re - z.re(), box.im - z.im());
  return d + BigFloat(static_cast<double>(z.err()) * 1.0000001 + 1e-320, 64) <= box.radius;
}

std::vector<std::pair<RootBox, QPoly>> isolate_roots_factored(const QPoly& f, long prec,
                                                              long prec_cap) {
  if (f.is_zero()) throw invalid_argument_error("cannot isolate roots of the zero polynomial");
  std::vector<std::pair<RootBox, QPoly>> all;
  auto factors = yun_squarefree(f);
  for (auto& [h0, mult] : factors) {
    QPoly h = h0;
    std::vector<Rational> rr = rational_roots(h);
    for (const auto& r : rr) {
      RootBox b;
      b.re = BigFloat(r, 192);
      b.im = BigFloat(0.0, 64);
      b.radius = rational_center_radius(r, b.re);
      b.multiplicity = mult;
      b.certified_real = true;
      b.has_exact = true;
      b.exact_value = r;
      QPoly lin;
      lin.c = {-r, Rational(1)};
      all.emplace_back(std::move(b), std::move(lin));
    }
    if (h.deg() < 1) continue;
    IntPoly hi = to_int_primitive(h);
    std::vector<CD> cd = scaled_double_coeffs(hi);
    long cbits = 64;
    for (const auto& cc : hi.c)
      if (cc != 0)
        cbits = std::max(cbits, static_cast<long>(boost::multiprecision::msb(
                                    boost::multiprecision::abs(cc))));
    std::vector<CD> base = aberth_double(cd, 0);
    std::vector<RootBox> boxes;
    for (int attempt = 0; attempt < 6 && boxes.empty(); ++attempt) {
      // two double-precision passes, then escalating-precision passes for
      // root sets too ill-conditioned for doubles
      std::vector<MX> seeds =
          attempt == 0 ? to_mx(base)
          : attempt == 1
              ? to_mx(aberth_double(cd, 1))
              : aberth_mpfr(hi, base, (128 + cbits) << (attempt - 2), attempt);
      for (long p = prec; p <= prec_cap; p *= 2) {
        CertifyResult cr = certify_factor(h, seeds, p);
        if (!cr.boxes.empty()) {
          boxes = std::move(cr.boxes);
          break;
        }
        if (!cr.retry_higher) break;
      }
    }
    if (boxes.empty())
      throw precision_exhausted(
          "root isolation could not certify disjoint disks under the precision cap");
    mark_real_roots(h, boxes);
    QPoly hm = Rational(1) / h.lc() * h;
    for (auto& b : boxes) {
      b.multiplicity = mult;
      all.emplace_back(std::move(b), hm);
    }
  }
  // roots of distinct squarefree factors are distinct, but their certified
  // disks may still overlap; shrink until the whole collection is disjoint
  for (int round = 0;; ++round) {
    bool ok = true;
    for (size_t i = 0; i < all.size() && ok; ++i)
      for (size_t j = i + 1; j < all.size() && ok; ++j) {
        if (boxes_disjoint(all[i].first, all[j].first)) continue;
        if (all[i].first.has_exact && all[j].first.has_exact &&
            all[i].first.exact_value == all[j].first.exact_value)
          throw invalid_argument_error("duplicate exact root across factors");
        ok = false;
        auto& big = all[i].first.radius >= all[j].first.radius ? all[i] : all[j];
        BigFloat r = big.first.radius;
        long bits = 8 + std::max<long>(0, -static_cast<long>(mpfr_get_exp(r.raw())));
        refine_root(big.second, big.first, bits, prec_cap);
      }
    if (ok) break;
    if (round >= 64) throw precision_exhausted("could not separate roots of distinct factors");
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first.re != b.first.re) return a.first.re < b.first.re;
    return a.first.im < b.first.im;
  });
  return all;
}

std::vector<RootBox> isolate_roots(const QPoly& f, long prec, long prec_cap) {
  auto fac = isolate_roots_factored(f, prec, prec_cap);
  std::vector<RootBox> out;
  out.reserve(fac.size());
  for (auto& fb : fac) out.push_back(std::move(fb.first));
  return out;
}

std::vector<RootBox> isolate_roots_within(const QPoly& f, const BigFloat& radius, long prec_cap) {
  if (!(radius > BigFloat(0.0, 64)))
    throw invalid_argument_error("isolating radius must be positive");
  long target = 4 + std::max<long>(0, 1 - mpfr_get_exp(radius.raw()));
  auto fac = isolate_roots_factored(f, 192, prec_cap);
  std::vector<RootBox> out;
  out.reserve(fac.size());
  for (auto& [box, sqf] : fac) {
    while (!(box.radius <= radius)) {
      refine_root(sqf, box, target);
      target *= 2;
    }
    out.push_back(std::move(box));
  }
  return out;
}

void refine_root(const QPoly& squarefree, RootBox& box, long target_bits, long prec_cap) {
  BigFloat target(1.0, 64);
  mpfr_mul_2si(target.raw(), target.raw(), -target_bits, MPFR_RNDN);
  if (box.radius <= target) return;
  if (box.has_exact) {
    long prec = std::max<long>(192, target_bits + 64);
    while (prec <= prec_cap) {
      box.re = BigFloat(box.exact_value, prec);
      box.radius = rational_center_radius(box.exact_value, box.re);
      if (box.radius <= target) return;
      prec *= 2;
    }
    throw precision_exhausted("exact root refinement hit the precision cap");
  }
  QPoly hp = squarefree.derivative();
  size_t n = static_cast<size_t>(squarefree.deg());
  long prec = std::max<long>(192, box.re.prec() * 2);
  while (prec <= prec_cap) {
    ComplexApprox z(box.re.with_prec(prec), box.im.with_prec(prec), 0.0L);
    for (int it = 0; it < 64; ++it) {
      ComplexApprox pv = qpoly_eval_ca(squarefree, z);
      ComplexApprox dv = qpoly_eval_ca(hp, z);
      if (!dv.definitely_nonzero()) break;
      ComplexApprox step = pv / dv;
      z = ComplexApprox(z.re() - step.re(), z.im() - step.im(), 0.0L);
      if (step.mag() <
          std::pow(0.5L, static_cast<long double>(std::min(prec, 4000L)) * 0.6L) * (1.0L + z.mag()))
        break;
    }
    if (box.certified_real) z = ComplexApprox(z.re(), BigFloat(0.0, prec), 0.0L);
    CaEval pv = eval_bounds(squarefree, z);
    CaEval dv = eval_bounds(hp, z);
    if (dv.lower > 0.0L) {
      long double rad =
          static_cast<long double>(n) * pv.upper / dv.lower * 1.000001L + 1e-320L;
      BigFloat nr(static_cast<double>(rad), 64);
      BigFloat dist = hypot(z.re() - box.re, z.im() - box.im);
      bool inside = dist + nr <= box.radius + BigFloat(1e-320, 64);
      if (inside && nr < box.radius) {
        box.re = z.re();
        box.im = z.im();
        box.radius = nr;
        if (box.radius <= target) return;
      }
    }
    prec *= 2;
  }
  throw precision_exhausted("root refinement hit the precision cap");
}

}  // namespace bifib
