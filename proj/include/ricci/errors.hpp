#pragma once

#include <stdexcept>

namespace ricci {

// Curvature component input contradicts the required index symmetries or the
// first Bianchi identity beyond the stated tolerance.
struct SymmetryViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric argument is not invertible (or not positive definite).
struct SingularMetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ratio of the form X/(R + c) was requested where R + c <= 0.
struct DenominatorNonpositive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter or state outside the admissible domain of a family.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A warp field sample fell below the positivity floor.
struct DegenerateField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A per-point array does not match the quadrature point count.
struct ArityMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSuite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ricci
