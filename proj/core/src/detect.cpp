#include "stemcpd/detect.hpp"

#include "stemcpd/error.hpp"

#include <string>

namespace stemcpd {

SmoothedSeries smooth(const TimeSeries& y, const KernelWeights& weights) {
  const std::size_t half = weights.half_width();
  const std::size_t n = y.size();
  if (n < weights.size()) {
    throw Error(Errc::bandwidth_too_large,
                "series of length " + std::to_string(n) +
                    " is shorter than the kernel (" + std::to_string(weights.size()) +
                    " samples)");
  }
  if (weights.spacing() != y.spacing) {
    throw Error(Errc::grid_mismatch, "kernel and series spacing differ");
  }

  SmoothedSeries out;
  out.series.spacing = y.spacing;
  out.series.origin = y.origin;
  out.series.values.assign(n, 0.0);
  out.begin = half;
  out.end = n - half;

  const auto taps = weights.taps();
  const double* v = y.values.data();
  const double h = y.spacing;
  // Pairing +k and -k halves the work and makes odd kernels return exact zeros
  // on constant input.
  if (weights.odd()) {
    for (std::size_t t = out.begin; t < out.end; ++t) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= half; ++k) {
        acc += taps[half + k] * (v[t - k] - v[t + k]);
      }
      out.series.values[t] = acc * h;
    }
  } else {
    for (std::size_t t = out.begin; t < out.end; ++t) {
      double acc = taps[half] * v[t];
      for (std::size_t k = 1; k <= half; ++k) {
        acc += taps[half + k] * (v[t - k] + v[t + k]);
      }
      out.series.values[t] = acc * h;
    }
  }
  return out;
}

SmoothedSeries smooth_derivative(const TimeSeries& y, const KernelSpec& spec) {
  if (spec.order != 1) {
    throw Error(Errc::invalid_parameter, "smooth_derivative needs an order-1 kernel");
  }
  return smooth(y, kernel_weights(spec, y.spacing));
}

namespace {

std::vector<Extremum> scan(std::span<const double> d, std::size_t begin,
                           std::size_t end, const TimeSeries* grid) {
  std::vector<Extremum> out;
  if (end < begin + 3) {
    return out;
  }
  auto make = [&](std::size_t i, ExtremumKind kind) {
    Extremum e;
    e.index = i;
    e.location = grid ? grid->time_at(i) : static_cast<double>(i);
    e.height = d[i];
    e.kind = kind;
    return e;
  };

  std::size_t i = begin + 1;
  while (i + 1 < end) {
    const double here = d[i];
    const bool up = here > d[i - 1];
    const bool down = here < d[i - 1];
    if (!up && !down) {
      ++i;
      continue;
    }
    // Walk across a plateau starting at i.
    std::size_t j = i;
    while (j + 1 < end && d[j + 1] == here) {
      ++j;
    }
    if (j + 1 < end) {
      if (up && d[j + 1] < here) {
        out.push_back(make(i, ExtremumKind::maximum));
      } else if (down && d[j + 1] > here) {
        out.push_back(make(i, ExtremumKind::minimum));
      }
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

std::vector<Extremum> find_local_extrema(const SmoothedSeries& dy) {
  return scan(dy.series.values, dy.begin, dy.end, &dy.series);
}

std::vector<Extremum> find_local_extrema(std::span<const double> dy) {
  return scan(dy, 0, dy.size(), nullptr);
}

}  // namespace stemcpd
