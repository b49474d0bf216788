#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths (no symmetric folding, no sorting tricks) so they can check it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <vector>

namespace oracle {

/// Full-sum discrete convolution over the valid range: out[t] = sum_j taps[j] y[t + K - j].
inline std::vector<double> direct_convolve(std::span<const double> y, std::span<const double> taps,
                                           double spacing = 1.0) {
  const std::size_t half = taps.size() / 2;
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t t = half; t + half < y.size(); ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < taps.size(); ++j) {
      acc += taps[j] * y[t + half - j];
    }
    out[t] = acc * spacing;
  }
  return out;
}

/// Plain step-up: sort a copy, scan i = m..1, reject everything at or below p_(k).
inline std::set<std::size_t> bh_reject(std::span<const double> p, double alpha) {
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = p.size();
  for (std::size_t i = m; i >= 1; --i) {
    if (sorted[i - 1] < static_cast<double>(i) * alpha / static_cast<double>(m)) {
      std::set<std::size_t> out;
      for (std::size_t j = 0; j < m; ++j) {
        if (p[j] <= sorted[i - 1]) out.insert(j);
      }
      return out;
    }
  }
  return {};
}

inline double ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - x[i]));
    d = std::max(d, std::abs(x[i] - static_cast<double>(i) / n));
  }
  return d;
}

inline double mean_square(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s / static_cast<double>(x.size());
}

inline double sample_variance(std::span<const double> x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size() - 1);
}

/// Number of strict interior local maxima.
inline std::size_t count_maxima(std::span<const double> x) {
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    n += (x[i] > x[i - 1] && x[i] > x[i + 1]) ? 1 : 0;
  }
  return n;
}

inline double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

}  // namespace oracle
