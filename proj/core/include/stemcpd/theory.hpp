#pragma once

#include "stemcpd/infer.hpp"
#include "stemcpd/synth.hpp"

#include <span>
#include <vector>

namespace stemcpd {

/// Inputs of the asymptotic threshold and FDR bounds. All bounds are
/// leading-term values; the O(a^-2 + L^-1/2) remainders are not included.
struct TheoryConfig {
  /// Change-point density J / L.
  double A1 = 0.01;
  /// Kernel support half-width in bandwidth units.
  double c = 4.0;
  double alpha = 0.05;
  double gamma = 1.0;
  SpectralMoments moments;

  /// 1 - 2 c gamma A1, the asymptotic null fraction. Throws
  /// Error(degenerate_config) when it is not positive.
  double null_fraction() const;
  void validate() const;
};

/// Expected number of local maxima of z'_gamma per unit length: sqrt(lam6 / lam4) / (2 pi).
double null_max_rate(const SpectralMoments& m);

/// Expected number of local maxima above u per unit length: rate * F(u).
double null_max_rate_above(double u, const SpectralMoments& m);

/// |a| w_gamma(0) / sigma'_gamma for the Gaussian model, in closed form:
/// sqrt(2) |a| / (sigma pi^(1/4)) * (gamma^2 + nu^2)^(3/4) / gamma.
double snr(double a, const NoiseModel& model, double gamma);

/// Phi((|a| w_gamma(0) - u) / sigma'_gamma) with w_gamma(0) = phi(0) / gamma.
double approx_power_j(double a, double u, const SpectralMoments& m, double gamma);

/// Tail probability the BH threshold converges to:
/// alpha A1 / (A1 + 2 rate (1 - 2 c gamma A1)(1 - alpha)).
double asymptotic_tail_target(const TheoryConfig& cfg);

/// u*_BH = F^{-1}(asymptotic_tail_target(cfg)).
double asymptotic_bh_threshold(const TheoryConfig& cfg);

/// Fixed-threshold bound: 2 E[m(u)] f / (2 E[m(u)] f + A1), f = 1 - 2 c gamma A1.
double fdr_upper_bound(double u, const TheoryConfig& cfg);

/// BH bound: alpha * 2 E[m] f / (2 E[m] f + A1).
double fdr_upper_bound_bh(const TheoryConfig& cfg);

struct PowerPoint {
  double gamma = 0.0;
  double tail_target = 0.0;
  double threshold = 0.0;
  double power = 0.0;
};

/// Approximate power at u*_BH for each bandwidth, Gaussian model moments.
std::vector<PowerPoint> theoretical_power_curve(double a, const NoiseModel& model,
                                                std::span<const double> gammas,
                                                double A1, double c, double alpha);

}  // namespace stemcpd
