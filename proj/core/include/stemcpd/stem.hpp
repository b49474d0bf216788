#pragma once

#include "stemcpd/detect.hpp"
#include "stemcpd/infer.hpp"
#include "stemcpd/kernel.hpp"
#include "stemcpd/mtest.hpp"
#include "stemcpd/synth.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace stemcpd {

/// Moments from the Gaussian autocorrelation model with known sigma and nu.
struct ClosedFormSource {
  NoiseModel model;
};

/// Moments estimated from the data with trimmed second moments.
struct EmpiricalSource {
  double trim = 0.1;
};

using MomentSource = std::variant<ClosedFormSource, EmpiricalSource>;

struct DetectionResult {
  /// All candidate extrema with p-values, in index order.
  std::vector<Extremum> extrema;
  /// Absent only when there were no candidates and the source is empirical.
  std::optional<SpectralMoments> moments;
  BHOutcome bh;
  /// Candidate positions (into `extrema`) declared significant.
  std::vector<std::size_t> significant;

  std::vector<Extremum> significant_extrema() const;
};

/// Smooth and differentiate, collect local extrema, attach p-values, run BH at
/// level alpha and convert the p-value cut into a height threshold.
DetectionResult detect_change_points(const TimeSeries& y, const KernelSpec& kernel,
                                     const MomentSource& source, double alpha);

}  // namespace stemcpd
