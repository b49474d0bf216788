#include "stemcpd/infer.hpp"

#include "stemcpd/error.hpp"
#include "stemcpd/normal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stemcpd {

SpectralMoments::SpectralMoments(double var1, double lam4, double lam6)
    : var1_(var1), lam4_(lam4), lam6_(lam6), delta_(var1 * lam6 - lam4 * lam4) {
  if (!(var1_ > 0.0 && lam4_ > 0.0 && lam6_ > 0.0) || !std::isfinite(var1_) ||
      !std::isfinite(lam4_) || !std::isfinite(lam6_)) {
    throw Error(Errc::moment_inconsistency, "spectral moments must be positive and finite");
  }
  if (!(delta_ > 0.0)) {
    throw Error(Errc::moment_inconsistency,
                "spectral moments violate var1 * lam6 > lam4^2");
  }
}

double SpectralMoments::sd1() const noexcept { return std::sqrt(var1_); }

SpectralMoments closed_form_moments(const NoiseModel& model, double gamma) {
  model.validate();
  if (!(gamma > 0.0)) {
    throw Error(Errc::invalid_parameter, "bandwidth must be positive");
  }
  const double xi2 = gamma * gamma + model.nu * model.nu;
  const double xi = std::sqrt(xi2);
  const double base = model.sigma * model.sigma / std::sqrt(std::numbers::pi) / (xi2 * xi);
  return SpectralMoments(base / 4.0, 3.0 * base / (8.0 * xi2), 15.0 * base / (16.0 * xi2 * xi2));
}

double trimmed_normal_second_moment(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(Errc::invalid_parameter, "trim fraction must be in [0, 1)");
  }
  if (q == 0.0) {
    return 1.0;
  }
  const double c = normal::quantile(1.0 - q / 2.0);
  return 1.0 - 2.0 * c * normal::pdf(c) / (1.0 - q);
}

double trimmed_variance(std::span<const double> values, double q) {
  if (!(q >= 0.0 && q < 0.5)) {
    throw Error(Errc::invalid_parameter, "trim fraction must be in [0, 0.5)");
  }
  const std::size_t n = values.size();
  const auto drop = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (drop >= n) {
    throw Error(Errc::cannot_estimate, "nothing left after trimming");
  }
  std::vector<double> sq(values.begin(), values.end());
  for (double& v : sq) {
    v *= v;
  }
  const std::size_t keep = n - drop;
  if (drop > 0) {
    std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(keep), sq.end());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < keep; ++i) {
    sum += sq[i];
  }
  // nth_element leaves [0, keep) unordered; summation order still depends only on input.
  return sum / static_cast<double>(keep) / trimmed_normal_second_moment(q);
}

SpectralMoments estimate_moments_empirical(const TimeSeries& y, const KernelSpec& kernel,
                                           double q) {
  if (!(q >= 0.0 && q < 0.5)) {
    throw Error(Errc::invalid_parameter, "trim fraction must be in [0, 0.5)");
  }
  double var[3] = {0.0, 0.0, 0.0};
  for (int order = 1; order <= 3; ++order) {
    const SmoothedSeries d = smooth(y, kernel_weights(kernel.with_order(order), y.spacing));
    if (d.interior_size() < 100) {
      throw Error(Errc::cannot_estimate,
                  "moment estimation needs at least 100 valid samples");
    }
    var[order - 1] = trimmed_variance(d.interior(), q);
  }
  if (!(var[0] > 0.0 && var[1] > 0.0 && var[2] > 0.0)) {
    throw Error(Errc::cannot_estimate, "smoothed derivatives are identically zero");
  }
  return SpectralMoments(var[0], var[1], var[2]);
}

SpectralMoments estimate_moments_empirical(const TimeSeries& y, double gamma, double q) {
  KernelSpec kernel;
  kernel.gamma = gamma;
  return estimate_moments_empirical(y, kernel, q);
}

double peak_height_tail(double u, const SpectralMoments& m) {
  if (std::isnan(u)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (u == std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  if (u == -std::numeric_limits<double>::infinity()) {
    return 1.0;
  }
  const double sd = m.sd1();
  const double l4sq = m.lam4() * m.lam4();
  const double first = normal::sf(u * std::sqrt(m.lam6() / m.delta()));
  const double weight = std::sqrt(2.0 * std::numbers::pi * l4sq / (m.lam6() * m.var1()));
  const double second =
      weight * normal::pdf(u / sd) * normal::cdf(u * std::sqrt(l4sq / (m.delta() * m.var1())));
  return std::clamp(first + second, 0.0, 1.0);
}

double peak_height_quantile(double p, const SpectralMoments& m) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(p < 1.0)) {
    return -inf;
  }
  if (!(p > 0.0)) {
    return inf;
  }
  // Bracket [lo, hi] with F(lo) >= p > F(hi), growing from +-10 sd.
  double lo = -10.0 * m.sd1();
  double hi = 10.0 * m.sd1();
  while (peak_height_tail(lo, m) < p) {
    lo *= 2.0;
    if (!std::isfinite(lo)) {
      return -inf;
    }
  }
  while (peak_height_tail(hi, m) >= p) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      return inf;
    }
  }
  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (peak_height_tail(mid, m) >= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void assign_pvalues(std::span<Extremum> extrema, const SpectralMoments& m) {
  // Keep p in (0, 1] even where the tail underflows.
  constexpr double floor = std::numeric_limits<double>::min();
  for (Extremum& e : extrema) {
    e.p_value = std::max(floor, peak_height_tail(e.is_max() ? e.height : -e.height, m));
  }
}

}  // namespace stemcpd
