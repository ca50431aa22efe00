#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside its documented domain (negative variance, eta outside
// [0,1], non-positive waist, ...).
struct DomainError : Error {
  using Error::Error;
};

// |det S - 1| exceeded tolerance for a quadrature transform.
struct NonSymplecticError : Error {
  using Error::Error;
};

// Covariance matrix not positive definite where one is required.
struct SingularCovarianceError : Error {
  using Error::Error;
};

// Coupling/decay tables reference unknown levels or break selection rules.
struct SchemeMismatchError : Error {
  using Error::Error;
};

// Internal assertion: an operator that must be Hermitian is not.
struct NonHermitianError : Error {
  using Error::Error;
};

// Liouvillian null space has dimension > 1.
struct DegenerateSteadyStateError : Error {
  using Error::Error;
};

// Drift matrix has an eigenvalue with positive real part.
struct UnstableDriftError : Error {
  using Error::Error;
};

// Diffusion matrix has a significantly negative eigenvalue.
struct NegativeDiffusionError : Error {
  using Error::Error;
};

// (i*omega - A) is numerically singular at the requested frequency.
struct SingularResolventError : Error {
  using Error::Error;
};

// Slice doubling failed to converge.
struct NonConvergedError : Error {
  using Error::Error;
};

// Measured variance below the vacuum floor implied by the efficiency.
struct UnphysicalError : Error {
  using Error::Error;
};

// Fit design matrix does not determine all parameters.
struct RankDeficientError : Error {
  using Error::Error;
};

// Malformed text input; carries a 1-based line number when known.
struct ParseError : Error {
  explicit ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_number(line) {}
  long line_number = 0;
};

// A required CSV column is absent.
struct MissingColumnError : Error {
  explicit MissingColumnError(const std::string& column)
      : Error("missing column: " + column), column_name(column) {}
  std::string column_name;
};

}  // namespace sqz
