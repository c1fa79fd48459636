#include "stable/error.hpp"

namespace stable {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AlphaOutOfRange: return "ALPHA_OUT_OF_RANGE";
    case ErrorCode::BetaOutOfRange: return "BETA_OUT_OF_RANGE";
    case ErrorCode::NonPositiveScale: return "NON_POSITIVE_SCALE";
    case ErrorCode::NonFiniteInput: return "NON_FINITE_INPUT";
    case ErrorCode::NotClosedForm: return "NOT_CLOSED_FORM";
    case ErrorCode::WindowTooNarrow: return "WINDOW_TOO_NARROW";
    case ErrorCode::QuadratureNoConvergence: return "QUADRATURE_NO_CONVERGENCE";
    case ErrorCode::NearModeInstability: return "NEAR_MODE_INSTABILITY";
    case ErrorCode::UnsupportedAlpha: return "UNSUPPORTED_ALPHA";
    case ErrorCode::MomentUndefined: return "MOMENT_UNDEFINED";
    case ErrorCode::VarianceUndefined: return "VARIANCE_UNDEFINED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::SampleTooSmall: return "SAMPLE_TOO_SMALL";
    case ErrorCode::DegenerateSample: return "DEGENERATE_SAMPLE";
    case ErrorCode::EcfDegenerate: return "ECF_DEGENERATE";
    case ErrorCode::AlphaNearOne: return "ALPHA_NEAR_ONE";
    case ErrorCode::InsufficientRegressionPoints: return "INSUFFICIENT_REGRESSION_POINTS";
    case ErrorCode::LogOfZero: return "LOG_OF_ZERO";
    case ErrorCode::MleAlphaRestriction: return "MLE_ALPHA_RESTRICTION";
    case ErrorCode::InitializationFailed: return "INITIALIZATION_FAILED";
    case ErrorCode::EmptyRecords: return "EMPTY_RECORDS";
    case ErrorCode::FileNotFound: return "FILE_NOT_FOUND";
    case ErrorCode::ColumnNotFound: return "COLUMN_NOT_FOUND";
    case ErrorCode::TooFewPrices: return "TOO_FEW_PRICES";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace stable
