#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bifib/algebraic.hpp"
#include "bifib/weierstrass.hpp"

namespace bifib {

// non-negative real with an absolute error bound
struct HeightValue {
  double value = 0.0;
  double error = 0.0;
};

// log |n| for nonzero n, exact up to double rounding, O(1) in the size of n
double log_bigint(const BigInt& n);

// absolute logarithmic Weil height of a rational projective point, computed
// exactly from coprime integer coordinates
HeightValue naive_height(const std::vector<Rational>& coords);

// archimedean product formula over a number field: one row of coordinate
// values per conjugate embedding. The caller must supply algebraic-integer
// coordinates generating the unit ideal, otherwise finite places contribute
// and this sum is only an upper part of the true height.
HeightValue naive_height(const std::vector<std::vector<ComplexApprox>>& embeddings);

// log Mahler measure log|lc| + sum log max(1, |root|) of a nonconstant
// integer polynomial, from certified root boxes
double log_mahler_measure(const IntPoly& f, long prec_cap = 1 << 14);

// (1/deg f) * log M(f): the Weil height shared by all roots of f when f is
// irreducible, and a degree-weighted average of the factor heights otherwise
HeightValue mahler_height(const IntPoly& f, long prec_cap = 1 << 14);

// sufficient irreducibility certificate over Q: the factor degree patterns
// modulo several primes admit no proper common subset sum. true is a proof;
// false only means undecided.
bool certify_irreducible(const IntPoly& f);

// ---------------------------------------------------------------------------
// canonical heights by the doubling limit

struct DoublingTrace {
  int steps = 0;
  double last_defect = 0.0;  // |h_{n+1} - 4 h_n| at the stopping index
  bool cycled = false;       // the doubling orbit repeated: torsion, limit 0 exactly
};

// lim 4^{-n} h(x(2^n P)) with the x-coordinate naive height (the degree-2
// symmetric bundle; x-coordinate normalization, quadratic in P). Doubling runs
// on exact coprime integer pairs. Each scaled height carries the geometric
// tail correction from the observed defect, (h_n - h_{n-1}) / (3 4^{n-1}); the
// loop stops once two successive corrected values differ by less than tol/2
// and the reported error tracks those differences. Torsion points are
// recognized by orbit repetition and return 0 exactly.
HeightValue canonical_height(const ShortCurve<Rational>& E, const EPoint<Rational>& P,
                             double tol = 1e-9, DoublingTrace* trace = nullptr);

struct SymmetrizedHeight {
  HeightValue total;  // skew/2 + sym/2
  HeightValue skew;   // lim 2^{-n} (h(2^n P) - h(-2^n P)); identically 0 for the x-height
  HeightValue sym;    // lim 4^{-n} (h(2^n P) + h(-2^n P)) = twice the canonical height
};

SymmetrizedHeight symmetrized_canonical_height(const ShortCurve<Rational>& E,
                                               const EPoint<Rational>& P, double tol = 1e-9);

// h(x+y) + h(x-y) - 2h(x) - h(y) - h(-y) for the symmetrized height, which
// the parallelogram law sends to zero; the error field accumulates the five
// evaluation errors
HeightValue parallelogram_residual(const ShortCurve<Rational>& E, const EPoint<Rational>& x,
                                   const EPoint<Rational>& y, double tol = 1e-9);

// ---------------------------------------------------------------------------
// explicit torsion-order and isogeny bound calculators

struct BoundReport {
  int g = 1;
  long d = 1;
  double hterm = 0.0;       // the max(1, ...) term that entered the power
  BigInt value;             // the bound itself, rounded up when not exact
  bool exact = false;       // value is the bound exactly
  double log10_value = 0.0; // agrees with value to float precision
};

// ((14g)^{64 g^2} d max(1, c*h + C, log d)^2)^{2240 g^3}: upper bound for the
// order of a torsion value over a point field of degree d. c and C are
// configuration; the source result leaves them implicit.
BoundReport torsion_order_bound(int g, long d, double h, double c = 1.0, double C = 0.0);

// kappa = ((14g)^{64 g^2} d max(1, hF, log d)^2)^{1024 g^3}; returns the group
// exponent bound kappa^{35/16} and the cardinality bound kappa^{4g+1}
std::pair<BoundReport, BoundReport> remond_kappa(int g, long d, double hF);

// 3 * 35840 g^3 / 16
BigInt remond_constant(int g);

// (1/2) log deg: drift of the stable modular height along an isogeny
double isogeny_height_delta(const BigInt& deg);

// ---------------------------------------------------------------------------
// heights of torsion values along a fiber family

struct TorsionValueHeightRow {
  int order = 0;
  int degree = 0;          // degree of the annihilator
  IntPoly annihilator;     // primitive integer polynomial the parameters satisfy
  bool irreducible = false;  // certified: the row is a single conjugacy class
  HeightValue height;      // Weil height of the parameters (Mahler average if uncertified)
};

struct TorsionHeightSurvey {
  int axis = 1;
  int m_max = 0;
  std::vector<TorsionValueHeightRow> rows;
  std::vector<int> section_torsion_orders;  // orders where the section is torsion identically
  std::vector<double> running_max;          // running_max[m-1] = C(m), NaN while no rows exist
};

// naive heights of the parameters where the section has exact order m, for
// every m <= m_max, away from singular and non-specializing fibers; rows are
// grouped by annihilating polynomial and the running maximum C(m) is tracked
TorsionHeightSurvey torsion_height_survey(const FiberFamily& F, int m_max,
                                          long prec_cap = 1 << 14);

std::string survey_json(const TorsionHeightSurvey& s);
std::string survey_csv(const TorsionHeightSurvey& s);

}  // namespace bifib
