#pragma once

#include <stdexcept>
#include <string>

namespace ssmhd {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- geometry --------------------------------------------------------------

/// Attempt to convert the zero vector to spherical coordinates.
struct ZeroVector : Error {
  using Error::Error;
};

/// A cot(phi) or 1/sin(phi) term was required on the polar axis.
struct AxisSingularity : Error {
  using Error::Error;
};

// -- parameters and domains ------------------------------------------------

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

/// Evaluation point outside a profile's angular domain.
struct OutOfDomain : Error {
  using Error::Error;
};

/// Finite-difference step too large for the distance to axis/origin.
struct StepTooLarge : Error {
  using Error::Error;
};

// -- landau ------------------------------------------------------------

/// Root bracketing for the beta -> a inverse failed up to the search limit.
struct NoBracket : Error {
  using Error::Error;
};

/// rotate_to_b called with a zero force vector.
struct ZeroForce : Error {
  using Error::Error;
};

// -- profile system ----------------------------------------------------

/// Navier-slip comparison requested for a profile with g(pi/2) != 0.
struct GNotZero : Error {
  using Error::Error;
};

// -- shooting ----------------------------------------------------------

/// A profile with max|f| below the identifiability floor was passed to the
/// Landau parameter fit.
struct TrivialProfile : Error {
  using Error::Error;
};

/// The diagnostic B branch hit the |g| guard during integration.
struct GuardTripped : Error {
  using Error::Error;
};

// -- pde verification ----------------------------------------------------

/// Finite-difference stencil would touch an excluded zone.
struct ExclusionViolation : Error {
  using Error::Error;
};

}  // namespace ssmhd
