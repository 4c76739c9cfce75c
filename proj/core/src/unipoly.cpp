#include "bifib/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace bifib {

namespace {

BigInt bgcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

Rational rational_pow(const Rational& q, long e) {
  if (e < 0) return 1 / rational_pow(q, -e);
  Rational acc(1), base = q;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// pseudo remainder: exactly lc(b)^(deg a - deg b + 1) * a mod b, all integer;
// steps that drop the degree by more than one get padded at the end so the
// multiplier power is always the full deg a - deg b + 1
IntPoly int_prem(IntPoly a, const IntPoly& b) {
  int d = a.deg() - b.deg();
  if (d < 0) return a;
  const BigInt& lb = b.c.back();
  int steps = 0;
  while (!a.is_zero() && a.deg() >= b.deg()) {
    int s = a.deg() - b.deg();
    BigInt la = a.c.back();
    for (auto& x : a.c) x *= lb;
    for (int i = 0; i <= b.deg(); ++i) a.c[s + i] -= la * b.c[i];
    a.trim();
    ++steps;
  }
  for (; steps < d + 1; ++steps)
    for (auto& x : a.c) x *= lb;
  return a;
}

IntPoly int_primitive(IntPoly f, bool positive_lead = true) {
  if (f.is_zero()) return f;
  BigInt g = int_content(f);
  if (positive_lead && f.c.back() < 0) g = -g;
  for (auto& x : f.c) x /= g;
  return f;
}

}  // namespace

BigInt int_content(const IntPoly& f) {
  BigInt g(0);
  for (const auto& x : f.c) g = bgcd(g, x);
  if (g == 0) g = 1;
  return boost::multiprecision::abs(g);
}

IntPoly to_int_primitive(const QPoly& f) {
  IntPoly r;
  if (f.is_zero()) return r;
  BigInt l(1);
  for (const auto& q : f.c) l = l / bgcd(l, denominator(q)) * denominator(q);
  r.c.reserve(f.c.size());
  for (const auto& q : f.c) r.c.push_back(numerator(q) * (l / denominator(q)));
  r.trim();
  return int_primitive(std::move(r));
}

QPoly to_qpoly(const IntPoly& f) {
  QPoly r;
  r.c.reserve(f.c.size());
  for (const auto& x : f.c) r.c.emplace_back(x);
  r.trim();
  return r;
}

QPoly qpoly_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) {
    if (b.is_zero()) return QPoly();
    QPoly r = b;
    Rational inv = 1 / r.lc();
    return inv * r;
  }
  if (b.is_zero()) return qpoly_gcd(b, a);
  IntPoly f = to_int_primitive(a), g = to_int_primitive(b);
  if (f.deg() < g.deg()) std::swap(f, g);
  // primitive PRS; content stripping each step keeps sizes tame enough here
  while (!g.is_zero()) {
    IntPoly r = int_primitive(int_prem(f, g));
    f = std::move(g);
    g = std::move(r);
  }
  QPoly out = to_qpoly(f);
  Rational inv = 1 / out.lc();
  return inv * out;
}

Rational rational_pow2(long k) {
  BigInt two(1);
  two <<= (k >= 0 ? k : -k);
  return k >= 0 ? Rational(two) : Rational(1, two);
}

// subresultant-flavored resultant: uses the recursive relation on pseudo
// remainders, with exact bookkeeping of the scale factors introduced
Rational qpoly_resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rational(0);
  // res over Q reduces to res of integer polynomials, corrected by the
  // denominators cleared from each argument
  IntPoly f = to_int_primitive(a), g = to_int_primitive(b);
  // track rational correction: res(ca*F, cb*G) = ca^deg(G) cb^deg(F) res(F,G)
  Rational corr(1);
  {
    Rational ca = a.lc() / Rational(f.c.back());
    Rational cb = b.lc() / Rational(g.c.back());
    corr = rational_pow(ca, g.deg()) * rational_pow(cb, f.deg());
  }
  // res(F,G) with F,G integer primitive via PRS
  int sgn = 1;
  if (f.deg() < g.deg()) {
    if ((f.deg() & 1) && (g.deg() & 1)) sgn = -sgn;
    std::swap(f, g);
  }
  Rational acc(1);
  while (true) {
    if (g.is_zero()) return Rational(0);
    if (g.deg() == 0) {
      acc *= rational_pow(Rational(g.c.back()), f.deg());
      break;
    }
    int df = f.deg(), dg = g.deg();
    if ((df & 1) && (dg & 1)) sgn = -sgn;
    IntPoly r = int_prem(f, g);
    // prem multiplied f by lc(g)^(df-dg+1): res scales by lc(g)^((df-dg+1)*dg)
    // and the degree drop contributes lc(g)^(df - deg r)
    BigInt lg = g.c.back();
    int dr = r.is_zero() ? -1 : r.deg();
    // res(f,g) = (-1)^(df*dg) lc(g)^(df - dr) res(g, r) / lc(g)^((df-dg+1)*dg) ... combined:
    long e = static_cast<long>(df - dr) - static_cast<long>(df - dg + 1) * dg;
    acc *= rational_pow(Rational(lg), e);
    if (r.is_zero()) return Rational(0);
    f = std::move(g);
    g = std::move(r);
  }
  return corr * acc * sgn;
}

bool qpoly_divides(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.is_zero();
  if (b.is_zero()) return true;
  if (b.deg() < a.deg()) return false;
  return upoly_divrem(b, a).second.is_zero();
}

QPoly qpoly_exact_div(const QPoly& b, const QPoly& a) {
  auto [q, r] = upoly_divrem(b, a);
  if (!r.is_zero()) throw invalid_argument_error("exact polynomial division has a remainder");
  return q;
}

std::vector<std::pair<QPoly, int>> yun_squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.deg() <= 0) return out;
  QPoly fp = f.derivative();
  QPoly a = qpoly_gcd(f, fp);
  QPoly b = qpoly_exact_div(f, a);
  QPoly c = qpoly_exact_div(fp, a);
  QPoly d = c - b.derivative();
  int i = 1;
  while (b.deg() > 0) {
    QPoly g = qpoly_gcd(b, d);
    if (g.deg() > 0) out.emplace_back(g, i);
    b = qpoly_exact_div(b, g);
    c = qpoly_exact_div(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

QPoly squarefree_part(const QPoly& f) {
  if (f.deg() <= 0) return f;
  QPoly g = qpoly_gcd(f, f.derivative());
  if (g.deg() == 0) {
    QPoly r = f;
    Rational inv = 1 / r.lc();
    return inv * r;
  }
  QPoly r = qpoly_exact_div(f, g);
  Rational inv = 1 / r.lc();
  return inv * r;
}

std::vector<Rational> rational_roots(QPoly& f) {
  std::vector<Rational> roots;
  if (f.is_zero()) return roots;
  // strip x-factors first
  while (f.c.size() > 1 && f.c[0].is_zero()) {
    roots.emplace_back(0);
    f.c.erase(f.c.begin());
  }
  IntPoly g = to_int_primitive(f);
  if (g.deg() < 1) return roots;
  BigInt a0 = boost::multiprecision::abs(g.c.front());
  BigInt an = boost::multiprecision::abs(g.c.back());
  // opportunistic: enumerate small divisors only; larger rational roots are
  // found by the numeric isolator and never need to be exact
  const BigInt cap = 100000;
  std::vector<BigInt> ps, qs;
  auto divisors = [&](const BigInt& n, std::vector<BigInt>& out) {
    for (BigInt d = 1; d * d <= n && d <= cap; ++d) {
      if (n % d == 0) {
        out.push_back(d);
        if (d * d != n && n / d <= cap) out.push_back(n / d);
      }
    }
  };
  divisors(a0, ps);
  divisors(an, qs);
  for (const auto& q : qs)
    for (const auto& p : ps)
      for (int s : {1, -1}) {
        Rational cand(p * s, q);
        while (true) {
          QPoly lin;
          lin.c = {-cand, Rational(1)};
          auto [qq, rr] = upoly_divrem(f, lin);
          if (!rr.is_zero()) break;
          roots.push_back(cand);
          f = qq;
        }
      }
  return roots;
}

QPoly qpoly_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw invalid_argument_error("interpolation size mismatch");
  QPoly acc;          // running interpolant (Newton form accumulated)
  QPoly basis(Rational(1));
  for (size_t k = 0; k < xs.size(); ++k) {
    Rational val = acc.eval_k(xs[k]);
    Rational bas = basis.eval_k(xs[k]);
    Rational coef = (ys[k] - val) / bas;
    acc = acc + coef * basis;
    QPoly lin;
    lin.c = {-xs[k], Rational(1)};
    basis = basis * lin;
  }
  return acc;
}

ComplexApprox qpoly_eval_ca(const QPoly& f, const ComplexApprox& x) {
  long p = x.prec();
  ComplexApprox acc(0.0, 0.0, p);
  for (size_t i = f.c.size(); i-- > 0;) acc = acc * x + scalar(f.c[i], p);
  return acc;
}

std::string qpoly_str(const QPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.deg(); i >= 0; --i) {
    Rational q = f.at(static_cast<size_t>(i));
    if (q.is_zero()) continue;
    if (!first) os << (q > 0 ? " + " : " - ");
    else if (q < 0)
      os << "-";
    Rational aq = boost::multiprecision::abs(q);
    bool unit = (aq == 1);
    if (!unit || i == 0) os << aq;
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace bifib
