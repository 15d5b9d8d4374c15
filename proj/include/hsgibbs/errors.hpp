#pragma once

#include <stdexcept>
#include <string>

namespace hs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 3; }
};

// configuration problems: exit code 2
struct ConfigError : Error {
  using Error::Error;
  int exit_code() const override { return 2; }
};
struct InvalidDims : ConfigError { using ConfigError::ConfigError; };
struct MismatchedConfig : ConfigError { using ConfigError::ConfigError; };

// numerical failures: exit code 3
struct NumericalError : Error { using Error::Error; };

struct SingularDesign : NumericalError {
  double condition;
  SingularDesign(const std::string& what, double cond) : NumericalError(what), condition(cond) {}
};
struct NotPositiveDefinite : NumericalError {
  int pivot;
  NotPositiveDefinite(const std::string& what, int piv) : NumericalError(what), pivot(piv) {}
};
struct NonFinite : NumericalError { using NumericalError::NumericalError; };
struct QuadratureFailure : NumericalError { using NumericalError::NumericalError; };
struct RuntimeBudgetExceeded : NumericalError { using NumericalError::NumericalError; };
struct NotLogConcave : NumericalError { using NumericalError::NumericalError; };
struct BracketingFailure : NumericalError { using NumericalError::NumericalError; };
struct DegenerateSeries : NumericalError { using NumericalError::NumericalError; };
struct SeriesTooShort : NumericalError { using NumericalError::NumericalError; };

}  // namespace hs
