#pragma once

#include <stdexcept>
#include <string>

namespace bhmetric {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : NumericalError {
  using NumericalError::NumericalError;
};

struct NoConvergence : NumericalError {
  int iterations;
  explicit NoConvergence(const std::string& what, int iters)
      : NumericalError(what), iterations(iters) {}
};

struct AmbiguousRank : NumericalError {
  using NumericalError::NumericalError;
};

struct InvalidDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RecurrenceBreakdown : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateSpectrum : NumericalError {
  using NumericalError::NumericalError;
};

struct UnknownFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonPositiveMetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoSignChange : NumericalError {
  using NumericalError::NumericalError;
};

struct BranchCrossing : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace bhmetric
