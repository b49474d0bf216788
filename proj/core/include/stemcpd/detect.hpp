#pragma once

#include "stemcpd/kernel.hpp"
#include "stemcpd/synth.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace stemcpd {

/// Output of a kernel convolution. Only [begin, end) is valid: the indices
/// where the full kernel support fits inside the data. Values outside are 0.
struct SmoothedSeries {
  TimeSeries series;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t interior_size() const noexcept { return end > begin ? end - begin : 0; }
  std::span<const double> interior() const noexcept {
    return std::span<const double>(series.values).subspan(begin, interior_size());
  }
};

enum class ExtremumKind { maximum, minimum };

struct Extremum {
  std::size_t index = 0;
  /// Grid coordinate t of `index`.
  double location = 0.0;
  /// Value of the smoothed derivative at the extremum.
  double height = 0.0;
  ExtremumKind kind = ExtremumKind::maximum;
  /// Filled in by assign_pvalues.
  double p_value = std::numeric_limits<double>::quiet_NaN();

  bool is_max() const noexcept { return kind == ExtremumKind::maximum; }
};

/// Discrete convolution (sum_k w[k] y[t - k] * spacing) with any-order kernel taps.
/// Throws Error(bandwidth_too_large) if the series is shorter than the kernel.
SmoothedSeries smooth(const TimeSeries& y, const KernelWeights& weights);

/// y'_gamma = w'_gamma * y. `spec.order` must be 1.
SmoothedSeries smooth_derivative(const TimeSeries& y, const KernelSpec& spec);

/// Strict local maxima and minima of the valid range.
///
/// A plateau of equal values flanked by strictly smaller (larger) values yields
/// one maximum (minimum) at its leftmost index. Candidates need both neighbours
/// inside the valid range, so none lie within K samples of a boundary.
std::vector<Extremum> find_local_extrema(const SmoothedSeries& dy);

/// Same, treating the whole sequence as the valid range (origin 0, spacing 1 locations).
std::vector<Extremum> find_local_extrema(std::span<const double> dy);

}  // namespace stemcpd
