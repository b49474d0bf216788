#pragma once

#include "stemcpd/detect.hpp"
#include "stemcpd/infer.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace stemcpd {

struct BHOutcome {
  /// Number of tested hypotheses.
  std::size_t m = 0;
  /// Largest i with p_(i) < i alpha / m (0 when nothing is rejected).
  std::size_t k = 0;
  double alpha = 0.0;
  /// k alpha / m, or 1 when m == 0.
  double p_threshold = 1.0;
  /// F^{-1}(p_threshold) on the height scale; NaN until bh_height_threshold runs.
  double u_threshold = std::numeric_limits<double>::quiet_NaN();
  /// Input positions of the rejected p-values, ascending.
  std::vector<std::size_t> rejected;
};

/// Benjamini-Hochberg step-up with the strict comparison p_(i) < i alpha / m.
/// Throws Error(invalid_parameter) for alpha outside (0, 1) or p outside (0, 1].
BHOutcome bh_select(std::span<const double> pvalues, double alpha);

/// u_BH with F(u_BH) = p_threshold; -inf when p_threshold == 1, +inf when it is 0.
double bh_height_threshold(const BHOutcome& outcome, const SpectralMoments& m);

/// Extrema whose height clears +-u: maxima above u, minima below -u.
std::vector<std::size_t> select_by_height(std::span<const Extremum> extrema, double u);

}  // namespace stemcpd
