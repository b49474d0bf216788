#include "stemcpd/normal.hpp"

#include "stemcpd/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>

namespace stemcpd {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::bandwidth_too_small: return "bandwidth-too-small";
    case Errc::bandwidth_too_large: return "bandwidth-too-large";
    case Errc::cannot_estimate: return "cannot-estimate";
    case Errc::moment_inconsistency: return "moment-inconsistency";
    case Errc::degenerate_config: return "degenerate-config";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::invalid_input: return "invalid-input";
  }
  return "unknown";
}

namespace normal {

double pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double sf(double x) noexcept {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(Errc::invalid_parameter, "normal quantile requires p in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace normal
}  // namespace stemcpd
