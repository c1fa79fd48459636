#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stable {

enum class ErrorCode {
  AlphaOutOfRange,
  BetaOutOfRange,
  NonPositiveScale,
  NonFiniteInput,
  NotClosedForm,
  WindowTooNarrow,
  QuadratureNoConvergence,
  NearModeInstability,
  UnsupportedAlpha,
  MomentUndefined,
  VarianceUndefined,
  InvalidArgument,
  SampleTooSmall,
  DegenerateSample,
  EcfDegenerate,
  AlphaNearOne,
  InsufficientRegressionPoints,
  LogOfZero,
  MleAlphaRestriction,
  InitializationFailed,
  EmptyRecords,
  FileNotFound,
  ColumnNotFound,
  TooFewPrices,
  ParseError,
};

/// Stable identifier used by the CLI when reporting errors on stderr.
std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stable
