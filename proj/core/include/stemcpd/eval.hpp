#pragma once

#include "stemcpd/detect.hpp"
#include "stemcpd/synth.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace stemcpd {

struct EvalConfig {
  /// Location tolerance: a detection is true if it lies in the open window (v_j - b, v_j + b).
  double b = 1.0;

  void validate() const;
};

struct EvalResult {
  std::size_t R = 0;
  /// Detections outside every tolerance window, whatever their sign.
  std::size_t V = 0;
  double fdp = 0.0;
  /// Per change point: a same-signed detection fell inside its window.
  std::vector<bool> hits;
  /// Absent when the truth has no change points.
  std::optional<double> power_fraction;
  /// Detections inside some window but with the wrong sign for every window
  /// that contains them. They count toward neither V nor power.
  std::size_t wrong_sign = 0;
  /// 2b exceeds the minimum change-point separation.
  bool windows_overlap = false;
};

EvalResult classify(std::span<const Extremum> detections, const PiecewiseSignal& truth,
                    const EvalConfig& cfg);

struct Summary {
  std::size_t replications = 0;
  /// Mean FDP.
  double fdr = 0.0;
  double fdr_se = 0.0;
  /// Mean power fraction over replicates where it is defined.
  std::optional<double> power;
  std::optional<double> power_se;
  double mean_detections = 0.0;
  /// Fraction of replicates with at least one detection.
  double any_detection = 0.0;
};

/// Running sums behind a Summary. Adding results in a fixed order gives
/// bit-reproducible summaries; merge() combines disjoint replicate ranges.
struct EvalAccumulator {
  std::size_t n = 0;
  double fdp_sum = 0.0;
  double fdp_sq_sum = 0.0;
  std::size_t power_n = 0;
  double power_sum = 0.0;
  double power_sq_sum = 0.0;
  double detections_sum = 0.0;
  std::size_t any_detection = 0;

  void add(double fdp, std::optional<double> power_fraction, std::size_t detections);
  void add(const EvalResult& r) { add(r.fdp, r.power_fraction, r.R); }
  void merge(const EvalAccumulator& other);
  /// Throws Error(invalid_parameter) when n == 0.
  Summary summary() const;
};

/// Arithmetic means and standard errors, summed in input order.
/// Throws Error(invalid_parameter) on an empty list.
Summary aggregate(std::span<const EvalResult> results);

/// Lebesgue measure of the signal region (union of the tolerance windows), the
/// smoothed-signal support (union of [v_j - c gamma, v_j + c gamma]) and their
/// difference, the transition region, all clipped to [lo, hi].
struct RegionSizes {
  double signal = 0.0;
  double smoothed_signal = 0.0;
  double transition = 0.0;
};

RegionSizes region_sizes(const PiecewiseSignal& truth, double b, double support_radius,
                         double lo, double hi);

}  // namespace stemcpd
