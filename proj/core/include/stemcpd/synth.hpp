#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stemcpd {

/// Uniformly sampled sequence; sample i sits at t = origin + i * spacing.
struct TimeSeries {
  std::vector<double> values;
  double spacing = 1.0;
  double origin = 1.0;

  std::size_t size() const noexcept { return values.size(); }
  double time_at(std::size_t i) const noexcept {
    return origin + static_cast<double>(i) * spacing;
  }

  /// Throws Error(invalid_input) on non-finite values or bad spacing.
  void validate() const;
};

struct Jump {
  double location;
  double size;
};

/// Piecewise-constant mean mu(t) = sum_j a_j 1(t >= v_j) on a domain of length L.
class PiecewiseSignal {
public:
  PiecewiseSignal(std::vector<Jump> jumps, double length);

  /// Signal without change points (complete null).
  static PiecewiseSignal flat(double length) { return PiecewiseSignal({}, length); }

  const std::vector<Jump>& jumps() const noexcept { return jumps_; }
  std::size_t count() const noexcept { return jumps_.size(); }
  double length() const noexcept { return length_; }

  double value(double t) const;

  /// Smallest gap between consecutive change points (infinity when J < 2).
  double min_separation() const noexcept;

  /// Smallest |a_j| (infinity when J == 0).
  double min_jump() const noexcept;

private:
  std::vector<Jump> jumps_;
  double length_;
};

struct NoiseModel {
  double sigma = 1.0;
  /// Gaussian autocorrelation scale; 0 means white noise.
  double nu = 0.0;

  void validate() const;
};

/// Staircase mu(t) = a * floor(t / d): change points j * d for every j >= 1 with j * d < L.
PiecewiseSignal make_staircase(double a, long d, long length);

/// Stationary Gaussian noise on t = 1..L: sigma times white noise convolved
/// with the N(0, nu^2) density, or i.i.d. N(0, sigma^2) when nu == 0.
TimeSeries sample_noise(const NoiseModel& model, std::size_t length, std::uint64_t seed);

/// Samples mu at t = origin + i * spacing, i = 0..length-1.
TimeSeries sample_signal(const PiecewiseSignal& signal, std::size_t length,
                         double spacing = 1.0, double origin = 1.0);

/// y = mu + z on the noise grid.
TimeSeries compose(const PiecewiseSignal& signal, const TimeSeries& noise);

/// Pointwise sum of two series on the same grid.
TimeSeries compose(const TimeSeries& signal, const TimeSeries& noise);

}  // namespace stemcpd
