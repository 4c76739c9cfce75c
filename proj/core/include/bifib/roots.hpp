#pragma once

#include <vector>

#include "bifib/unipoly.hpp"

namespace bifib {

// certified isolating disk: |root - center| <= radius, exactly one root of the
// (squarefree) polynomial it was certified against lies inside
struct RootBox {
  BigFloat re, im;   // dyadic center, exact as stored
  BigFloat radius;
  int multiplicity = 1;
  bool certified_real = false;
  bool has_exact = false;   // the root is the rational below; center approximates it
  Rational exact_value;

  ComplexApprox approx() const {
    return ComplexApprox(re, im, radius.to_long_double() * 1.0000001L + 1e-4000L);
  }
};

bool boxes_disjoint(const RootBox& a, const RootBox& b);
// is the disk (z.center, z.err) certainly inside box?
bool box_contains(const RootBox& box, const ComplexApprox& z);

// all complex roots of f with multiplicity; boxes pairwise disjoint and sorted
// by (re, im); total count with multiplicity equals deg f. Raises
// precision_exhausted if prec_cap cannot separate them.
std::vector<RootBox> isolate_roots(const QPoly& f, long prec = 192, long prec_cap = 1 << 14);

// isolate and then shrink every box below the requested radius
std::vector<RootBox> isolate_roots_within(const QPoly& f, const BigFloat& radius,
                                          long prec_cap = 1 << 14);

// same, but each box is paired with the squarefree factor it was certified
// against (monic); rational roots get their exact linear factor
std::vector<std::pair<RootBox, QPoly>> isolate_roots_factored(const QPoly& f, long prec = 192,
                                                              long prec_cap = 1 << 14);

// shrink the box below 2^-target_bits (same root), escalating precision
void refine_root(const QPoly& squarefree, RootBox& box, long target_bits,
                 long prec_cap = 1 << 14);

// exact upper bound on |q - fl(q)| for the stored dyadic approximation
BigFloat rational_center_radius(const Rational& q, const BigFloat& center);

}  // namespace bifib
