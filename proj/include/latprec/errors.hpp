#pragma once

#include <stdexcept>
#include <string>

namespace latprec {

struct DimError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateBasis : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefinite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConditioningError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularChannel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptyBudget : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConeNotPointed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RayUnbounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrthogonalityCheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReproFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace latprec
