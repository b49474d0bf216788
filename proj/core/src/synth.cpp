#include "stemcpd/synth.hpp"

#include "stemcpd/error.hpp"
#include "stemcpd/normal.hpp"
#include "stemcpd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stemcpd {

void TimeSeries::validate() const {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(Errc::invalid_input, "series spacing must be positive");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::invalid_input,
                  "non-finite value at sample " + std::to_string(i));
    }
  }
}

PiecewiseSignal::PiecewiseSignal(std::vector<Jump> jumps, double length)
    : jumps_(std::move(jumps)), length_(length) {
  if (!(length_ > 0.0)) {
    throw Error(Errc::invalid_parameter, "signal length must be positive");
  }
  for (std::size_t j = 0; j < jumps_.size(); ++j) {
    if (!(jumps_[j].size != 0.0) || !std::isfinite(jumps_[j].size)) {
      throw Error(Errc::invalid_parameter, "jump sizes must be finite and nonzero");
    }
    if (j > 0 && !(jumps_[j].location > jumps_[j - 1].location)) {
      throw Error(Errc::invalid_parameter, "change points must be strictly increasing");
    }
  }
}

double PiecewiseSignal::value(double t) const {
  double mu = 0.0;
  for (const Jump& jump : jumps_) {
    if (t < jump.location) {
      break;
    }
    mu += jump.size;
  }
  return mu;
}

double PiecewiseSignal::min_separation() const noexcept {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < jumps_.size(); ++j) {
    gap = std::min(gap, jumps_[j].location - jumps_[j - 1].location);
  }
  return gap;
}

double PiecewiseSignal::min_jump() const noexcept {
  double a = std::numeric_limits<double>::infinity();
  for (const Jump& jump : jumps_) {
    a = std::min(a, std::abs(jump.size));
  }
  return a;
}

void NoiseModel::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_parameter, "noise sigma must be positive");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw Error(Errc::invalid_parameter, "noise nu must be non-negative");
  }
}

PiecewiseSignal make_staircase(double a, long d, long length) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw Error(Errc::invalid_parameter, "staircase jump size must be nonzero");
  }
  if (d < 2 || length <= d) {
    throw Error(Errc::invalid_parameter, "staircase requires d >= 2 and L > d");
  }
  std::vector<Jump> jumps;
  for (long v = d; v < length; v += d) {
    jumps.push_back({static_cast<double>(v), a});
  }
  return PiecewiseSignal(std::move(jumps), static_cast<double>(length));
}

TimeSeries sample_noise(const NoiseModel& model, std::size_t length, std::uint64_t seed) {
  model.validate();
  if (length == 0) {
    throw Error(Errc::invalid_parameter, "noise length must be at least 1");
  }
  Rng rng(seed);
  TimeSeries out;
  out.values.resize(length);

  if (model.nu == 0.0) {
    for (double& v : out.values) {
      v = model.sigma * rng.normal();
    }
    return out;
  }

  // Pad by 4 nu on each side so every returned sample sees the full filter.
  const auto pad = static_cast<std::size_t>(std::ceil(4.0 * model.nu));
  std::vector<double> filter(2 * pad + 1);
  for (std::size_t i = 0; i < filter.size(); ++i) {
    const double k = static_cast<double>(i) - static_cast<double>(pad);
    filter[i] = normal::pdf(k / model.nu) / model.nu;
  }
  std::vector<double> white(length + 2 * pad);
  for (double& e : white) {
    e = rng.normal();
  }
  for (std::size_t t = 0; t < length; ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < filter.size(); ++i) {
      acc += filter[i] * white[t + filter.size() - 1 - i];
    }
    out.values[t] = model.sigma * acc;
  }
  return out;
}

TimeSeries sample_signal(const PiecewiseSignal& signal, std::size_t length,
                         double spacing, double origin) {
  TimeSeries out;
  out.spacing = spacing;
  out.origin = origin;
  out.values.resize(length);
  // Single sweep over the sorted jumps.
  const auto& jumps = signal.jumps();
  std::size_t next = 0;
  double level = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = out.time_at(i);
    while (next < jumps.size() && jumps[next].location <= t) {
      level += jumps[next].size;
      ++next;
    }
    out.values[i] = level;
  }
  return out;
}

TimeSeries compose(const PiecewiseSignal& signal, const TimeSeries& noise) {
  TimeSeries mu = sample_signal(signal, noise.size(), noise.spacing, noise.origin);
  return compose(mu, noise);
}

TimeSeries compose(const TimeSeries& signal, const TimeSeries& noise) {
  if (signal.size() != noise.size() || signal.spacing != noise.spacing ||
      signal.origin != noise.origin) {
    throw Error(Errc::grid_mismatch, "signal and noise grids differ");
  }
  TimeSeries out = noise;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = signal.values[i] + noise.values[i];
  }
  return out;
}

}  // namespace stemcpd
