#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bifib/complex_approx.hpp"
#include "bifib/weierstrass.hpp"

namespace bifib {

// oriented basis of the period lattice of a complex elliptic curve
struct PeriodLattice {
  ComplexApprox w1, w2;  // Im(w2/w1) > 0
  ComplexApprox tau() const { return w2 / w1; }
  // length of the shortest nonzero vector representable in the stored basis
  double injectivity_radius() const;
};

// periods of dx/y via the optimal-branch complex arithmetic-geometric mean on
// square roots of root differences; the basis is Lagrange-reduced, oriented,
// and certified against the half-period values of the exponential map, which
// rules out generating a proper sublattice
PeriodLattice period_lattice(const ShortCurve<ComplexApprox>& E, double disc_margin = 1e-8);

// Weierstrass parametrization z -> (x(z), y(z)): Laurent series after halving
// into the convergence disk, then chord-tangent doublings on the curve
EPoint<ComplexApprox> elliptic_exp(const ShortCurve<ComplexApprox>& E, const ComplexApprox& z,
                                   const PeriodLattice& L);

// abelian logarithm of P: symmetric-integral duplication with a grid-seeded
// Newton fallback; reduced to the representative nearest 0 modulo the lattice
// and always verified by an exp round-trip
ComplexApprox elliptic_log(const ShortCurve<ComplexApprox>& E, const EPoint<ComplexApprox>& P,
                           const PeriodLattice& L);

struct BettiPoint {
  double b1 = 0.0, b2 = 0.0;  // coordinates in the period basis, in [0, 1)
  double err = 0.0;           // absolute bound shared by both coordinates
};

// solve z = b1 w1 + b2 w2 over the reals and reduce to [0,1)^2; a basis too
// skew for a stable solve is Lagrange-reduced first and the solve retried
BettiPoint betti_coords(const ComplexApprox& z, const PeriodLattice& L);

struct RationalHit {
  long p1 = 0, p2 = 0, q = 1;  // (p1/q, p2/q) with q the least common denominator
  long height = 1;             // max of |numerator| and denominator in lowest terms
};

// the unique rational pair with common denominator <= qmax inside the error
// box; none when no candidate exists or when several distinct pairs fit
std::optional<RationalHit> detect_rational(const BettiPoint& b, long qmax);

// distinct rational hits of height <= T among the given points; needs qmax >= T
int count_rational_points(const std::vector<BettiPoint>& points, long T, long qmax);

// ---------------------------------------------------------------------------
// Betti map of the marked section over the base

struct BasePoint {
  double re = 0.0, im = 0.0;
};

// fiber of the integral family model over a complex base point, and the
// section carried onto it by the integral twist
ShortCurve<ComplexApprox> complex_curve(const FiberFamily& F, const ComplexApprox& t);
EPoint<ComplexApprox> complex_section(const FiberFamily& F, const ComplexApprox& t);

struct ScanOptions {
  long prec = 192;            // working precision for fibers, periods, logs
  long qmax = 6;              // rational detection bound
  double step_bound = 0.25;   // torus distance allowed between neighbor samples
  double disc_margin = 1e-8;  // near-singular clearance for period computation
  int max_bisect = 40;        // per-segment bisection budget (branch + crossings)
  double hit_err = 1e-8;      // error box used when testing refined crossings
};

struct ScanSample {
  BasePoint t;
  BettiPoint beta;
  std::optional<RationalHit> hit;
  std::string flags;  // "inserted" bisection sample, "rebase" basis re-reduction,
                      // "refined" crossing-located rational value
};

struct ScanResult {
  int axis = 1;
  std::vector<ScanSample> samples;  // path order, including inserted midpoints
  std::vector<ScanSample> hits;     // refined rational crossings
  double max_step = 0.0;            // largest torus step between neighbors
};

// Betti coordinates of the marked section along a path, with stepwise period
// continuation (the basis follows the previous sample; steps are bisected to
// stay within the injectivity radius); rational values with denominator
// <= qmax are located by refining coordinate crossings between samples
ScanResult base_betti_scan(const FiberFamily& F, const std::vector<BasePoint>& path,
                           const ScanOptions& opt = {});

std::string scan_csv(const ScanResult& s);
std::string scan_json(const ScanResult& s);

// uniform sampling of a real base interval
std::vector<BasePoint> real_path(double t0, double t1, int n);

// singular values of the finite-difference Jacobian of the Betti map at t,
// largest first; two values well above noise certify full real rank
std::array<double, 2> betti_rank_svals(const FiberFamily& F, const BasePoint& t,
                                       double h = 1e-6, long prec = 192);

struct CardinalityReport {
  int targets = 0;
  int grid = 0;         // cells per side at the base resolution
  int max_count = 0;    // max preimage count over sampled targets, base grid
  int refined_max = 0;  // the same at doubled resolution
  bool stable = false;  // the two maxima agree
};

// best-effort maximum cardinality of a Betti fiber over a complex-parameter
// box: grid sampling plus local Newton inversion around each sampled target
CardinalityReport fiber_cardinality_check(const FiberFamily& F, const BasePoint& lo,
                                          const BasePoint& hi, int targets, int grid = 12,
                                          const ScanOptions& opt = {});

}  // namespace bifib
