#include "stemcpd/mtest.hpp"

#include "stemcpd/error.hpp"

#include <algorithm>
#include <numeric>

namespace stemcpd {

BHOutcome bh_select(std::span<const double> pvalues, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_parameter, "alpha must be in (0, 1)");
  }
  for (double p : pvalues) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error(Errc::invalid_parameter, "p-values must lie in (0, 1]");
    }
  }

  BHOutcome out;
  out.alpha = alpha;
  out.m = pvalues.size();
  if (out.m == 0) {
    out.p_threshold = 1.0;
    return out;
  }

  std::vector<std::size_t> order(out.m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

  const double m = static_cast<double>(out.m);
  for (std::size_t i = out.m; i >= 1; --i) {
    if (pvalues[order[i - 1]] < static_cast<double>(i) * alpha / m) {
      out.k = i;
      break;
    }
  }
  out.p_threshold = static_cast<double>(out.k) * alpha / m;
  for (std::size_t i = 0; i < out.m; ++i) {
    if (pvalues[i] < out.p_threshold) {
      out.rejected.push_back(i);
    }
  }
  return out;
}

double bh_height_threshold(const BHOutcome& outcome, const SpectralMoments& m) {
  return peak_height_quantile(outcome.p_threshold, m);
}

std::vector<std::size_t> select_by_height(std::span<const Extremum> extrema, double u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < extrema.size(); ++i) {
    const Extremum& e = extrema[i];
    if (e.is_max() ? e.height > u : e.height < -u) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace stemcpd
