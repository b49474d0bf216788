#include "stemcpd/theory.hpp"

#include "stemcpd/error.hpp"
#include "stemcpd/normal.hpp"

#include <cmath>
#include <numbers>

namespace stemcpd {

double TheoryConfig::null_fraction() const {
  const double f = 1.0 - 2.0 * c * gamma * A1;
  if (!(f > 0.0)) {
    throw Error(Errc::degenerate_config,
                "2 c gamma A1 >= 1: the null region vanishes");
  }
  return f;
}

void TheoryConfig::validate() const {
  if (!(A1 > 0.0)) {
    throw Error(Errc::degenerate_config, "change-point density A1 must be positive");
  }
  if (!(c > 0.0) || !(gamma > 0.0)) {
    throw Error(Errc::degenerate_config, "c and gamma must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::degenerate_config, "alpha must be in (0, 1)");
  }
  null_fraction();
}

double null_max_rate(const SpectralMoments& m) {
  return std::sqrt(m.lam6() / m.lam4()) / (2.0 * std::numbers::pi);
}

double null_max_rate_above(double u, const SpectralMoments& m) {
  return null_max_rate(m) * peak_height_tail(u, m);
}

double snr(double a, const NoiseModel& model, double gamma) {
  model.validate();
  if (!(gamma > 0.0)) {
    throw Error(Errc::invalid_parameter, "bandwidth must be positive");
  }
  const double xi2 = gamma * gamma + model.nu * model.nu;
  return std::numbers::sqrt2 * std::abs(a) / (model.sigma * std::pow(std::numbers::pi, 0.25)) *
         std::pow(xi2, 0.75) / gamma;
}

double approx_power_j(double a, double u, const SpectralMoments& m, double gamma) {
  const double peak = std::abs(a) * normal::pdf(0.0) / gamma;
  return normal::cdf((peak - u) / m.sd1());
}

double asymptotic_tail_target(const TheoryConfig& cfg) {
  cfg.validate();
  const double null_extrema = 2.0 * null_max_rate(cfg.moments) * cfg.null_fraction();
  return cfg.alpha * cfg.A1 / (cfg.A1 + null_extrema * (1.0 - cfg.alpha));
}

double asymptotic_bh_threshold(const TheoryConfig& cfg) {
  return peak_height_quantile(asymptotic_tail_target(cfg), cfg.moments);
}

double fdr_upper_bound(double u, const TheoryConfig& cfg) {
  cfg.validate();
  const double x = 2.0 * null_max_rate_above(u, cfg.moments) * cfg.null_fraction();
  return x / (x + cfg.A1);
}

double fdr_upper_bound_bh(const TheoryConfig& cfg) {
  cfg.validate();
  const double x = 2.0 * null_max_rate(cfg.moments) * cfg.null_fraction();
  return cfg.alpha * x / (x + cfg.A1);
}

std::vector<PowerPoint> theoretical_power_curve(double a, const NoiseModel& model,
                                                std::span<const double> gammas,
                                                double A1, double c, double alpha) {
  std::vector<PowerPoint> curve;
  curve.reserve(gammas.size());
  for (double gamma : gammas) {
    const TheoryConfig cfg{.A1 = A1,
                           .c = c,
                           .alpha = alpha,
                           .gamma = gamma,
                           .moments = closed_form_moments(model, gamma)};
    PowerPoint p;
    p.gamma = gamma;
    p.tail_target = asymptotic_tail_target(cfg);
    p.threshold = peak_height_quantile(p.tail_target, cfg.moments);
    p.power = approx_power_j(a, p.threshold, cfg.moments, gamma);
    curve.push_back(p);
  }
  return curve;
}

}  // namespace stemcpd
