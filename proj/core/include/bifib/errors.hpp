#pragma once

#include <stdexcept>
#include <string>

namespace bifib {

// raised when doubling the working precision up to the configured cap still
// cannot separate or certify the quantity in question
struct precision_exhausted : std::runtime_error {
  explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// raised when a fiber parameter lands on (or within the guard margin of)
// the singular locus of the family being evaluated
struct singular_fiber_error : std::runtime_error {
  explicit singular_fiber_error(const std::string& what) : std::runtime_error(what) {}
};

// raised when a point sits on the fundamental locus of the fibration whose
// fiberwise operation was requested
struct fundamental_locus_error : std::runtime_error {
  explicit fundamental_locus_error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_argument_error : std::invalid_argument {
  explicit invalid_argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// sampling loop exhausted its attempt budget without a certified surface
struct construction_failed_error : std::runtime_error {
  explicit construction_failed_error(const std::string& what) : std::runtime_error(what) {}
};

// every member of the family is singular (vanishing discriminant as a polynomial)
struct degenerate_family_error : std::runtime_error {
  explicit degenerate_family_error(const std::string& what) : std::runtime_error(what) {}
};

// the marked point chosen as the group origin is a singular point of its fiber
struct marked_point_singular_error : std::runtime_error {
  explicit marked_point_singular_error(const std::string& what) : std::runtime_error(what) {}
};

// the plane cubic split off a component, so there is no elliptic model
struct reducible_fiber_error : std::runtime_error {
  explicit reducible_fiber_error(const std::string& what) : std::runtime_error(what) {}
};

// the requested section is torsion along the whole family, so its torsion
// locus is not a finite set of parameter values
struct section_torsion_error : std::runtime_error {
  explicit section_torsion_error(const std::string& what) : std::runtime_error(what) {}
};

// an operation that is only meaningful over an exact coefficient domain was
// invoked with approximate data
struct unsupported_domain_error : std::runtime_error {
  explicit unsupported_domain_error(const std::string& what) : std::runtime_error(what) {}
};

// fiber too close to the discriminant locus for stable period computation
struct ill_conditioned_fiber_error : std::runtime_error {
  explicit ill_conditioned_fiber_error(const std::string& what) : std::runtime_error(what) {}
};

// period continuation along a path could not stay within the injectivity
// radius even after the configured bisection budget; refine the path
struct branch_tracking_error : std::runtime_error {
  explicit branch_tracking_error(const std::string& what) : std::runtime_error(what) {}
};

// two independently computed values that must agree did not; indicates a bug,
// not bad input
struct internal_consistency_error : std::logic_error {
  explicit internal_consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bifib
