#include "estimators/common.hpp"

namespace stable {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Quantile: return "quantile";
    case Method::LogMoments: return "logmoments";
    case Method::Ecf: return "ecf";
    case Method::EcfRegression: return "ecf-reg";
    case Method::Mle: return "mle";
  }
  return "unknown";
}

Method method_from_name(std::string_view name) {
  for (Method m : {Method::Quantile, Method::LogMoments, Method::Ecf, Method::EcfRegression, Method::Mle}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

EstimationResult estimate(Method m, std::span<const double> sample) {
  switch (m) {
    case Method::Quantile: return estimate_quantile(sample);
    case Method::LogMoments: return estimate_logmoments(sample);
    case Method::Ecf: return estimate_ecf(sample);
    case Method::EcfRegression: return estimate_ecf_regression(sample);
    case Method::Mle: return estimate_mle(sample);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

}  // namespace stable
