#include "bifib/poly.hpp"

#include <algorithm>
#include <sstream>

namespace bifib {

MultiPoly MultiPoly::constant(int arity, const Rational& q) {
  MultiPoly p(arity);
  if (!q.is_zero()) p.t_[Mono{}] = q;
  return p;
}

MultiPoly MultiPoly::var(int arity, int v, int power) {
  MultiPoly p(arity);
  Mono m;
  m.e[static_cast<size_t>(v)] = static_cast<uint16_t>(power);
  p.t_[m] = 1;
  return p;
}

MultiPoly MultiPoly::term(int arity, const Mono& m, const Rational& q) {
  MultiPoly p(arity);
  if (!q.is_zero()) p.t_[m] = q;
  return p;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, q] : t_) {
    int s = 0;
    for (int i = 0; i < arity_; ++i) s += m.e[static_cast<size_t>(i)];
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(int v) const {
  int d = -1;
  for (const auto& [m, q] : t_) d = std::max(d, static_cast<int>(m.e[static_cast<size_t>(v)]));
  return d;
}

MultiPoly& MultiPoly::add_term(const Mono& m, const Rational& q) {
  auto it = t_.find(m);
  if (it == t_.end()) {
    if (!q.is_zero()) t_[m] = q;
  } else {
    it->second += q;
    if (it->second.is_zero()) t_.erase(it);
  }
  return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [m, q] : b.t_) r.add_term(m, q);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [m, q] : b.t_) r.add_term(m, -q);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, q] : r.t_) q = -q;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r(a.arity_);
  for (const auto& [ma, qa] : a.t_)
    for (const auto& [mb, qb] : b.t_) {
      Mono m;
      for (size_t i = 0; i < m.e.size(); ++i)
        m.e[i] = static_cast<uint16_t>(ma.e[i] + mb.e[i]);
      r.add_term(m, qa * qb);
    }
  return r;
}

MultiPoly operator*(const Rational& k, const MultiPoly& a) {
  MultiPoly r(a.arity_);
  if (k.is_zero()) return r;
  r = a;
  for (auto& [m, q] : r.t_) q *= k;
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  MultiPoly acc = constant(arity_, 1);
  for (int i = 0; i < e; ++i) acc = acc * (*this);
  return acc;
}

MultiPoly MultiPoly::derivative(int v) const {
  MultiPoly r(arity_);
  for (const auto& [m, q] : t_) {
    int e = m.e[static_cast<size_t>(v)];
    if (e == 0) continue;
    Mono m2 = m;
    m2.e[static_cast<size_t>(v)] = static_cast<uint16_t>(e - 1);
    r.add_term(m2, q * e);
  }
  return r;
}

MultiPoly MultiPoly::substitute(int v, const MultiPoly& g) const {
  // group by exponent of v, then Horner in g
  if (degree_in(v) < 0) return *this;
  std::vector<MultiPoly> coeff = coeffs_in(v);
  MultiPoly acc(arity_);
  for (size_t i = coeff.size(); i-- > 0;) acc = acc * g + coeff[i];
  return acc;
}

MultiPoly MultiPoly::partial_eval(int v, const Rational& q) const {
  std::vector<MultiPoly> coeff = coeffs_in(v);
  MultiPoly acc(arity_);
  Rational p(1);
  for (size_t i = 0; i < coeff.size(); ++i) {
    acc = acc + p * coeff[i];
    p *= q;
  }
  return acc;
}

MultiPoly MultiPoly::extend_arity(int new_arity) const {
  MultiPoly r = *this;
  r.arity_ = new_arity;
  return r;
}

MultiPoly MultiPoly::drop_var(int v) const {
  MultiPoly r(arity_ - 1);
  for (const auto& [m, q] : t_) {
    if (m.e[static_cast<size_t>(v)] != 0)
      throw invalid_argument_error("drop_var: variable still occurs");
    Mono m2{};
    int j = 0;
    for (int i = 0; i < arity_; ++i) {
      if (i == v) continue;
      m2.e[static_cast<size_t>(j++)] = m.e[static_cast<size_t>(i)];
    }
    r.t_[m2] = q;
  }
  return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& xs) const {
  Rational acc(0);
  for (const auto& [m, q] : t_) {
    Rational v = q;
    for (int i = 0; i < arity_; ++i)
      for (int k = 0; k < m.e[static_cast<size_t>(i)]; ++k) v *= xs[static_cast<size_t>(i)];
    acc += v;
  }
  return acc;
}

ComplexApprox MultiPoly::eval_ca(const std::vector<ComplexApprox>& xs) const {
  long prec = 64;
  for (const auto& x : xs) prec = std::max(prec, x.prec());
  ComplexApprox acc(0.0, 0.0, prec);
  for (const auto& [m, q] : t_) {
    ComplexApprox v = scalar(q, prec);
    for (int i = 0; i < arity_; ++i)
      for (int k = 0; k < m.e[static_cast<size_t>(i)]; ++k) v = v * xs[static_cast<size_t>(i)];
    acc = acc + v;
  }
  return acc;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int v) const {
  int d = degree_in(v);
  std::vector<MultiPoly> out(static_cast<size_t>(std::max(d + 1, 1)), MultiPoly(arity_));
  for (const auto& [m, q] : t_) {
    Mono m2 = m;
    int e = m.e[static_cast<size_t>(v)];
    m2.e[static_cast<size_t>(v)] = 0;
    out[static_cast<size_t>(e)].add_term(m2, q);
  }
  return out;
}

QPoly MultiPoly::to_qpoly(int v) const {
  QPoly f;
  f.c.assign(static_cast<size_t>(degree_in(v) + 1), Rational(0));
  for (const auto& [m, q] : t_) {
    for (int i = 0; i < arity_; ++i)
      if (i != v && m.e[static_cast<size_t>(i)] != 0)
        throw invalid_argument_error("to_qpoly: polynomial is not univariate in the given variable");
    f.c[m.e[static_cast<size_t>(v)]] = q;
  }
  f.trim();
  return f;
}

MultiPoly MultiPoly::from_qpoly(const QPoly& f, int arity, int v) {
  MultiPoly r(arity);
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i].is_zero()) continue;
    Mono m{};
    m.e[static_cast<size_t>(v)] = static_cast<uint16_t>(i);
    r.t_[m] = f.c[i];
  }
  return r;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print highest monomial first for readability
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Rational& q = it->second;
    if (!first) os << (q > 0 ? " + " : " - ");
    else if (q < 0)
      os << "-";
    Rational aq = boost::multiprecision::abs(q);
    bool printed = false;
    if (aq != 1) {
      os << aq;
      printed = true;
    }
    for (int i = 0; i < arity_; ++i) {
      int e = it->first.e[static_cast<size_t>(i)];
      if (e == 0) continue;
      if (printed) os << "*";
      os << names[static_cast<size_t>(i)];
      if (e > 1) os << "^" << e;
      printed = true;
    }
    if (!printed) os << aq;
    first = false;
  }
  return os.str();
}

MultiPoly mp_exact_div(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw invalid_argument_error("exact division by zero polynomial");
  MultiPoly r = f, q(f.arity());
  const auto& gt = g.terms();
  auto glead = gt.rbegin();  // lex-largest monomial of g
  while (!r.is_zero()) {
    auto rlead = r.terms().rbegin();
    Mono diff;
    for (size_t i = 0; i < diff.e.size(); ++i) {
      if (rlead->first.e[i] < glead->first.e[i])
        throw invalid_argument_error("exact multivariate division failed");
      diff.e[i] = static_cast<uint16_t>(rlead->first.e[i] - glead->first.e[i]);
    }
    Rational c = rlead->second / glead->second;
    MultiPoly t = MultiPoly::term(f.arity(), diff, c);
    q = q + t;
    r = r - t * g;
  }
  return q;
}

MultiPoly det_bareiss(std::vector<std::vector<MultiPoly>> m) {
  size_t n = m.size();
  if (n == 0) throw invalid_argument_error("empty matrix");
  int arity = m[0][0].arity();
  MultiPoly prev = MultiPoly::constant(arity, 1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t s = k + 1;
      while (s < n && m[s][k].is_zero()) ++s;
      if (s == n) return MultiPoly(arity);  // singular
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = mp_exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MultiPoly mp_resultant(const MultiPoly& f, const MultiPoly& g, int v) {
  std::vector<MultiPoly> a = f.coeffs_in(v), b = g.coeffs_in(v);
  int dm = f.degree_in(v), dn = g.degree_in(v);
  if (dm < 0 || dn < 0) return MultiPoly(f.arity());
  if (dm == 0) return f.pow(std::max(dn, 0));
  if (dn == 0) return g.pow(dm);
  size_t n = static_cast<size_t>(dm + dn);
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(f.arity())));
  for (int r = 0; r < dn; ++r)
    for (int i = 0; i <= dm; ++i) m[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = a[static_cast<size_t>(dm - i)];
  for (int r = 0; r < dm; ++r)
    for (int i = 0; i <= dn; ++i)
      m[static_cast<size_t>(dn + r)][static_cast<size_t>(r + i)] = b[static_cast<size_t>(dn - i)];
  return det_bareiss(std::move(m));
}

}  // namespace bifib
