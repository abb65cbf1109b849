#pragma once

#include <stdexcept>
#include <string>

namespace lukas {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid input or an operation applied outside its domain.
/// The CLI maps these to exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

/// An iterative numeric method exhausted its budget.
/// The CLI maps these to exit code 3.
struct NumericError : Error {
  using Error::Error;
};

struct MissingDownStep : ValidationError {
  MissingDownStep() : ValidationError("step set must contain -1") {}
};

struct IllegalStep : ValidationError {
  explicit IllegalStep(int step)
      : ValidationError("illegal step " + std::to_string(step) +
                        ": only -1 and non-negative steps are allowed") {}
};

struct DegenerateSet : ValidationError {
  DegenerateSet() : ValidationError("the step set {-1,0} is excluded") {}
};

struct EmptyUps : ValidationError {
  EmptyUps() : ValidationError("step set needs at least one non-negative step") {}
};

struct NonPositiveArgument : ValidationError {
  NonPositiveArgument() : ValidationError("S(u) requires u > 0") {}
};

struct DispersedNeedsNoZeroStep : ValidationError {
  DispersedNeedsNoZeroStep()
      : ValidationError("dispersed excursions require a step set without 0") {}
};

struct CapExceeded : ValidationError {
  CapExceeded(long n, long cap)
      : ValidationError("brute force length " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap)) {}
};

struct EmptyFamily : ValidationError {
  EmptyFamily() : ValidationError("no paths of this kind and length") {}
};

struct ZeroTrials : ValidationError {
  explicit ZeroTrials(long floor = 1)
      : ValidationError("at least " + std::to_string(floor) + " trials required") {}
};

struct PeriodMismatch : ValidationError {
  PeriodMismatch(long n, int p)
      : ValidationError("length " + std::to_string(n) +
                        " is not a multiple of the period " + std::to_string(p)) {}
};

struct TauIsOne : ValidationError {
  TauIsOne()
      : ValidationError("tau = 1 for this step set; use the dedicated "
                        "special-case formulas") {}
};

struct NotAnExcursion : ValidationError {
  using ValidationError::ValidationError;
  NotAnExcursion() : ValidationError("input path is not an excursion over S") {}
};

struct IllegalOutdegree : ValidationError {
  explicit IllegalOutdegree(std::size_t d)
      : ValidationError("node outdegree " + std::to_string(d) +
                        " is not in {0} + {b+1 : b up step}") {}
};

struct NoConvergence : NumericError {
  explicit NoConvergence(const std::string& what) : NumericError(what) {}
};

}  // namespace lukas
