#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bifib/algebraic.hpp"
#include "bifib/cubic.hpp"
#include "bifib/poly.hpp"

namespace bifib {

// a line in P^3 given by two independent linear forms and a parametrization
// (a:b) -> a*span[0] + b*span[1]
struct Line3 {
  std::array<std::array<Rational, 4>, 2> forms;
  std::array<std::array<Rational, 4>, 2> span;
  std::string name;
};

Line3 line_L1();  // z = w = 0
Line3 line_L2();  // x = y = 0
Line3 line_M();   // x - z = y - w = 0

// the 25 degree-4 monomials compatible with vanishing on L1 and L2, and the
// 20 independent quartics vanishing on all three lines (deterministic order)
std::vector<Mono> admissible_quartic_monomials();
std::vector<MultiPoly> three_line_quartic_basis();

bool contains_line(const MultiPoly& F, const Line3& l);

struct QuarticSurface {
  MultiPoly F;        // integer primitive homogeneous quartic in (x, y, z, w)
  uint64_t seed = 0;  // sampling seed when built by the generator, else 0
  std::string id;     // content hash of the coefficient vector

  // all 35 quartic coefficients, monomials sorted lexicographically with
  // x > y > z > w descending
  std::array<Rational, 35> full_coefficients() const;

  // verifies the three line containments exactly, clears denominators
  static QuarticSurface from_full_coefficients(const std::array<Rational, 35>& c);
  static QuarticSurface from_basis_coefficients(const std::vector<Rational>& c20);
};

std::string surface_to_text(const QuarticSurface& S);
QuarticSurface surface_from_text(const std::string& text);

enum class SmoothStatus { certified_smooth, singular_with_witness, inconclusive };

struct SmoothnessReport {
  SmoothStatus status = SmoothStatus::inconclusive;
  bool elimination_pass = false;  // projective resultant of the four partials
  bool candidate_pass = false;    // certified clearance of all candidate points
  int shears_tried = 0;
  int candidates_checked = 0;
  std::array<Rational, 4> witness{};  // filled for singular_with_witness
  std::string detail;
};

// two independent certificates must both pass: nonvanishing of the projective
// resultant of the four partials, and certified nonvanishing of the gradient
// at every candidate point (line checks plus pairwise singular-fiber
// intersections, which cover the singular locus)
SmoothnessReport certify_smooth(const QuarticSurface& S, long prec_cap = 1 << 12);

struct ConstructionDiagnostics {
  int attempts = 0;
  int rejected_resultant = 0;   // fast projective-resultant filter said zero
  int rejected_degenerate = 0;  // a residual family had identically singular fibers
  int rejected_certify = 0;     // full certificate did not come back smooth
};

// deterministic search for a certified smooth quartic through the three
// lines, coefficients bounded by |.| <= bound
QuarticSurface build_three_line_quartic(uint64_t seed, long bound, int max_attempts = 256,
                                        ConstructionDiagnostics* diag = nullptr);

// residual cubic family of one of the two pencils; axis 1 is the pencil
// z = t*w through L1 (plane coordinates x, y, w), axis 2 the pencil x = s*y
// through L2 (plane coordinates y, z, w); the second chart swaps the pencil
// parameter for its reciprocal (w = t'*z, resp. y = s'*x)
struct ResidualCubicFamily {
  int axis = 1;
  TernForm<QPoly> main;       // coefficients polynomial in the parameter, degree <= 3
  TernForm<QPoly> inf_chart;  // same family in the reciprocal parameter
  std::array<QPoly, 3> zero_point, section_point;          // main chart
  std::array<QPoly, 3> zero_point_inf, section_point_inf;  // second chart
};

ResidualCubicFamily residual_cubic(const QuarticSurface& S, int axis);

std::array<Rational, 3> marked_point_at(const std::array<QPoly, 3>& pt, const Rational& t);

// lift plane-chart coordinates back to P^3
std::array<Rational, 4> lift_to_p3(int axis, bool inf_chart, const std::array<Rational, 3>& p,
                                   const Rational& t);

// intersection of the parameter-t fiber with its own axis line, as roots of a
// binary cubic; excluded_fiber is set when the restriction vanishes
// identically (the fiber contains the axis line)
struct TrisectionResult {
  bool excluded_fiber = false;
  int multiplicity_at_infinity = 0;                      // root with second coordinate 0
  std::vector<std::pair<AlgebraicNumber, int>> ratios;   // finite ratios with multiplicity
};

TrisectionResult trisection_points(const ResidualCubicFamily& fam, const Rational& t);

// binary quadratic cutting out the two intersection points of the two fibers
// over (t, s) that avoid the axis lines; coefficients are bivariate in (t, s)
struct FiberPairQuadratic {
  // Q = c[0]*y^2 + c[1]*y*w + c[2]*w^2 on the line z=t*w, x=s*y, point
  // (s*y : y : t*w : w); chart flags replace t by 1/t' resp. s by 1/s'
  std::array<MultiPoly, 3> c;  // arity 2: (t, s)
  bool t_inf = false, s_inf = false;
};

FiberPairQuadratic fiber_pair_quadratic(const QuarticSurface& S, bool t_inf, bool s_inf);

}  // namespace bifib
