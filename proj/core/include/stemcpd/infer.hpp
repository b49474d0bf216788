#pragma once

#include "stemcpd/detect.hpp"
#include "stemcpd/kernel.hpp"
#include "stemcpd/synth.hpp"

#include <span>
#include <vector>

namespace stemcpd {

/// Variances of the first three derivatives of the smoothed noise z_gamma.
class SpectralMoments {
public:
  /// Throws Error(moment_inconsistency) unless all three are positive and
  /// var1 * lam6 > lam4^2.
  SpectralMoments(double var1, double lam4, double lam6);

  /// Var(z'_gamma)
  double var1() const noexcept { return var1_; }
  /// Var(z''_gamma)
  double lam4() const noexcept { return lam4_; }
  /// Var(z'''_gamma)
  double lam6() const noexcept { return lam6_; }
  /// var1 * lam6 - lam4^2
  double delta() const noexcept { return delta_; }
  double sd1() const noexcept;

  SpectralMoments scaled(double factor) const {
    return SpectralMoments(var1_ * factor, lam4_ * factor, lam6_ * factor);
  }

private:
  double var1_;
  double lam4_;
  double lam6_;
  double delta_;
};

/// Moments for the Gaussian autocorrelation noise model smoothed with a Gaussian
/// kernel of bandwidth gamma; xi = sqrt(gamma^2 + nu^2):
///   var1 = sigma^2 / (4 sqrt(pi) xi^3)
///   lam4 = 3 sigma^2 / (8 sqrt(pi) xi^5)
///   lam6 = 15 sigma^2 / (16 sqrt(pi) xi^7)
SpectralMoments closed_form_moments(const NoiseModel& model, double gamma);

/// E[X^2 | |X| <= Phi^{-1}(1 - q/2)] for X ~ N(0, 1).
double trimmed_normal_second_moment(double q);

/// Trimmed second moment of `values`: drop the ceil(q n) entries of largest
/// magnitude, average the remaining squares, divide by the standard-normal
/// deflation factor so the result is unbiased for a centred Gaussian.
double trimmed_variance(std::span<const double> values, double q);

/// Moments estimated from the data: variances of the order 1, 2 and 3 smoothed
/// derivatives of y, each through trimmed_variance.
///
/// Throws Error(invalid_parameter) for q outside [0, 0.5),
/// Error(cannot_estimate) if the valid range is shorter than 100 samples or the
/// derivatives vanish, Error(moment_inconsistency) if the estimated delta <= 0.
SpectralMoments estimate_moments_empirical(const TimeSeries& y, const KernelSpec& kernel,
                                           double q = 0.1);

SpectralMoments estimate_moments_empirical(const TimeSeries& y, double gamma, double q = 0.1);

/// F_gamma(u): probability that a local maximum of z'_gamma exceeds u.
double peak_height_tail(double u, const SpectralMoments& m);

/// Largest u with F_gamma(u) >= p (to adjacent doubles). Returns -inf for p >= 1
/// and +inf for p <= 0.
double peak_height_quantile(double p, const SpectralMoments& m);

/// Maxima get F(height), minima F(-height).
void assign_pvalues(std::span<Extremum> extrema, const SpectralMoments& m);

}  // namespace stemcpd
