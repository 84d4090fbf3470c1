#pragma once

#include <stdexcept>
#include <string>

namespace pshglue {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation requested at (or too close to) the singular locus of an atom,
// e.g. log|h|^2 at a zero of h, or -log(-t) at t >= 0.
struct SingularPoint : Error {
  using Error::Error;
};

// Point outside the declared domain of validity (box bounds or wrong dimension).
struct DomainViolation : Error {
  using Error::Error;
};

// Finite-difference Richardson levels disagree beyond the declared tolerance.
struct StepTooLarge : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Metric quadratic form came out negative at a quadrature node; signals a
// failed plurisubharmonicity hypothesis upstream.
struct NegativeSpeed : Error {
  using Error::Error;
};

struct EmptyDomain : Error {
  using Error::Error;
};

struct DegenerateBounds : Error {
  using Error::Error;
};

struct RangeViolation : Error {
  using Error::Error;
};

// Inner box touches the boundary of the outer box; no room for a transition.
struct NoMargin : Error {
  using Error::Error;
};

// Cutoff value at the point is below rho_min; the mixed-term check skips it.
struct BelowRhoMin : Error {
  using Error::Error;
};

// Exhaustion Levi form not positive definite at a sample.
struct ExhaustionDegenerate : Error {
  using Error::Error;
};

struct KSearchFailed : Error {
  using Error::Error;
};

struct DominationFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct UnknownExprNode : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace pshglue
