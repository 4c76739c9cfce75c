#include "bifib/algebraic.hpp"

#include <algorithm>

namespace bifib {

namespace {

// enclosure of every point of the box, suitable for rigorous evaluation
ComplexApprox box_enclosure(const RootBox& b, long prec) {
  return ComplexApprox(b.re.with_prec(prec), b.im.with_prec(prec),
                       b.radius.to_long_double() * 1.0000001L + 1e-4000L);
}

// exact test: is the rational point q inside the closed disk?
bool disk_contains_rational(const RootBox& b, const Rational& q) {
  Rational dx = q - b.re.to_rational_exact();
  Rational dy = b.im.to_rational_exact();
  Rational r = b.radius.to_rational_exact();
  return dx * dx + dy * dy <= r * r;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(const Rational& q) {
  defining_.c = {-q, Rational(1)};
  box_.re = BigFloat(q, 192);
  box_.im = BigFloat(0.0, 64);
  box_.radius = rational_center_radius(q, box_.re);
  box_.certified_real = true;
  box_.has_exact = true;
  box_.exact_value = q;
}

AlgebraicNumber::AlgebraicNumber(QPoly defining, RootBox box)
    : defining_(std::move(defining)), box_(std::move(box)) {
  if (defining_.deg() < 1) throw invalid_argument_error("defining polynomial must be nonconstant");
}

std::vector<AlgebraicNumber> AlgebraicNumber::roots_of(const QPoly& f, long prec_cap) {
  std::vector<AlgebraicNumber> out;
  for (auto& [box, factor] : isolate_roots_factored(f, 192, prec_cap))
    out.emplace_back(AlgebraicNumber(std::move(factor), std::move(box)));
  return out;
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw invalid_argument_error("not a known rational value");
  return box_.exact_value;
}

void AlgebraicNumber::refine(long target_bits, long prec_cap) const {
  refine_root(defining_, box_, target_bits, prec_cap);
}

ComplexApprox AlgebraicNumber::approx(long bits, long prec_cap) const {
  refine(bits, prec_cap);
  long p = bits + 64;
  return box_enclosure(box_, p);
}

bool AlgebraicNumber::vanishes_at(const QPoly& g, long prec_cap) const {
  if (g.is_zero()) return true;
  if (is_rational()) return g.eval_k(box_.exact_value).is_zero();
  QPoly d = qpoly_gcd(defining_, g);
  if (d.deg() == 0) return false;
  if (d.deg() == defining_.deg()) return true;  // defining divides g
  QPoly e = qpoly_exact_div(defining_, d);
  // alpha is a root of exactly one of the coprime factors d, e; shrink the
  // box until evaluation separates them
  for (long bits = 64; bits <= prec_cap; bits *= 2) {
    refine(bits, prec_cap);
    ComplexApprox z = box_enclosure(box_, bits + 64);
    ComplexApprox dv = qpoly_eval_ca(d, z);
    ComplexApprox ev = qpoly_eval_ca(e, z);
    if (dv.definitely_nonzero()) {
      defining_ = e;
      return false;
    }
    if (ev.definitely_nonzero()) {
      defining_ = d;
      return true;
    }
  }
  throw precision_exhausted("could not separate gcd factors at this root");
}

bool AlgebraicNumber::certify_real(long prec_cap) const {
  if (box_.certified_real) return true;
  QPoly fp = defining_.derivative();
  for (long bits = 64; bits <= prec_cap; bits *= 2) {
    refine(bits, prec_cap);
    if (abs(box_.im) > box_.radius) return false;  // disk misses the axis
    // interval Newton on the real section of the disk: if the Newton image
    // lands strictly inside the interval and inside the disk, the unique
    // root it certifies must be this one, hence real
    Rational m = box_.re.to_rational_exact();
    Rational R = box_.radius.to_rational_exact();
    long p = bits + 64;
    ComplexApprox encl = box_enclosure(box_, p);
    ComplexApprox ival(box_.re.with_prec(p), BigFloat(0.0, p), encl.err());
    ComplexApprox dv = qpoly_eval_ca(fp, ival);
    if (!dv.definitely_nonzero()) continue;
    Rational fm = defining_.eval_k(m);
    ComplexApprox q = scalar(fm, p) / dv;
    long double dm = q.mag() + q.err();
    BigFloat dmb(static_cast<double>(dm * 1.000001L + 1e-320L), 64);
    bool interior = dmb.to_rational_exact() < R * Rational(999, 1000);
    bool in_disk = hypot(dmb, abs(box_.im)) <= box_.radius;
    if (interior && in_disk) {
      box_.certified_real = true;
      // adopt the Newton image as a tighter real enclosure when it nests
      // inside the current disk; otherwise keep the disk untouched
      BigFloat nc = box_.re.with_prec(p) - q.re();
      BigFloat nr = BigFloat(static_cast<double>(q.err() * 1.000001L + 1e-320L), 64) +
                    abs(q.im());
      BigFloat dist = hypot(nc - box_.re, box_.im);
      if (dist + nr <= box_.radius) {
        box_.re = nc;
        box_.im = BigFloat(0.0, 64);
        box_.radius = nr;
      }
      return true;
    }
  }
  throw precision_exhausted("could not decide realness under the precision cap");
}

int AlgebraicNumber::compare_rational(const Rational& q, long prec_cap) const {
  if (is_rational()) {
    Rational d = box_.exact_value - q;
    return d.is_zero() ? 0 : (d > 0 ? 1 : -1);
  }
  if (!certify_real(prec_cap))
    throw invalid_argument_error("ordering requested for a non-real number");
  bool q_is_root = defining_.eval_k(q).is_zero();
  for (long bits = 64; bits <= prec_cap; bits *= 2) {
    if (q_is_root && disk_contains_rational(box_, q)) return 0;  // unique root in disk
    Rational c = box_.re.to_rational_exact();
    Rational r = box_.radius.to_rational_exact();
    if (c - r > q) return 1;
    if (c + r < q) return -1;
    refine(bits, prec_cap);
  }
  throw precision_exhausted("could not order against the rational point");
}

bool AlgebraicNumber::same_root(const AlgebraicNumber& other, long prec_cap) const {
  if (is_rational() && other.is_rational()) return box_.exact_value == other.box_.exact_value;
  if (is_rational()) {
    QPoly lin;
    lin.c = {-box_.exact_value, Rational(1)};
    return other.vanishes_at(lin, prec_cap);
  }
  if (other.is_rational()) {
    QPoly lin;
    lin.c = {-other.box_.exact_value, Rational(1)};
    return vanishes_at(lin, prec_cap);
  }
  if (!vanishes_at(other.defining_, prec_cap)) return false;
  if (!other.vanishes_at(defining_, prec_cap)) return false;
  QPoly d = qpoly_gcd(defining_, other.defining_);
  if (d.deg() == 1) return true;  // both are the unique root of d
  // both numbers are roots of d; match them against d's isolating boxes
  auto dboxes = isolate_roots(d, 192, prec_cap);
  auto locate = [&](const AlgebraicNumber& a) -> size_t {
    for (long bits = 64; bits <= prec_cap; bits *= 2) {
      a.refine(bits, prec_cap);
      ComplexApprox z = box_enclosure(a.box_, bits + 64);
      for (size_t i = 0; i < dboxes.size(); ++i)
        if (box_contains(dboxes[i], z)) return i;
      for (auto& db : dboxes) refine_root(d, db, std::max(16L, bits / 2), prec_cap);
    }
    throw precision_exhausted("could not match the root to an isolating box");
  };
  return locate(*this) == locate(other);
}

}  // namespace bifib
