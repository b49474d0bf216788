#include "stemcpd/eval.hpp"

#include "stemcpd/error.hpp"

#include <algorithm>
#include <cmath>

namespace stemcpd {

void EvalConfig::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(Errc::invalid_parameter, "location tolerance b must be positive");
  }
}

EvalResult classify(std::span<const Extremum> detections, const PiecewiseSignal& truth,
                    const EvalConfig& cfg) {
  cfg.validate();
  const auto& jumps = truth.jumps();

  EvalResult out;
  out.R = detections.size();
  out.hits.assign(jumps.size(), false);
  out.windows_overlap = 2.0 * cfg.b > truth.min_separation();

  for (const Extremum& det : detections) {
    // Windows are open intervals; jumps are sorted so only neighbours of the
    // insertion point can contain the detection, but overlap may widen that set.
    const double t = det.location;
    auto first = std::lower_bound(jumps.begin(), jumps.end(), t - cfg.b,
                                  [](const Jump& j, double x) { return j.location <= x; });
    bool inside = false;
    bool credited = false;
    for (auto it = first; it != jumps.end() && it->location < t + cfg.b; ++it) {
      inside = true;
      const bool matches = (it->size > 0.0) == det.is_max();
      if (matches) {
        out.hits[static_cast<std::size_t>(it - jumps.begin())] = true;
        credited = true;
      }
    }
    if (!inside) {
      ++out.V;
    } else if (!credited) {
      ++out.wrong_sign;
    }
  }

  out.fdp = static_cast<double>(out.V) / static_cast<double>(std::max<std::size_t>(out.R, 1));
  if (!jumps.empty()) {
    const auto hit_count = std::count(out.hits.begin(), out.hits.end(), true);
    out.power_fraction = static_cast<double>(hit_count) / static_cast<double>(jumps.size());
  }
  return out;
}

namespace {

double standard_error(double sum, double sum_sq, std::size_t n) {
  if (n < 2) {
    return 0.0;
  }
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
  return std::sqrt(var / dn);
}

}  // namespace

void EvalAccumulator::add(double fdp, std::optional<double> power_fraction,
                          std::size_t detections) {
  ++n;
  fdp_sum += fdp;
  fdp_sq_sum += fdp * fdp;
  detections_sum += static_cast<double>(detections);
  any_detection += detections > 0 ? 1 : 0;
  if (power_fraction) {
    ++power_n;
    power_sum += *power_fraction;
    power_sq_sum += *power_fraction * *power_fraction;
  }
}

void EvalAccumulator::merge(const EvalAccumulator& other) {
  n += other.n;
  fdp_sum += other.fdp_sum;
  fdp_sq_sum += other.fdp_sq_sum;
  power_n += other.power_n;
  power_sum += other.power_sum;
  power_sq_sum += other.power_sq_sum;
  detections_sum += other.detections_sum;
  any_detection += other.any_detection;
}

Summary EvalAccumulator::summary() const {
  if (n == 0) {
    throw Error(Errc::invalid_parameter, "aggregate needs at least one result");
  }
  Summary s;
  s.replications = n;
  const double dn = static_cast<double>(n);
  s.fdr = fdp_sum / dn;
  s.fdr_se = standard_error(fdp_sum, fdp_sq_sum, n);
  s.mean_detections = detections_sum / dn;
  s.any_detection = static_cast<double>(any_detection) / dn;
  if (power_n > 0) {
    s.power = power_sum / static_cast<double>(power_n);
    s.power_se = standard_error(power_sum, power_sq_sum, power_n);
  }
  return s;
}

Summary aggregate(std::span<const EvalResult> results) {
  EvalAccumulator acc;
  for (const EvalResult& r : results) {
    acc.add(r);
  }
  return acc.summary();
}

namespace {

double union_length(const PiecewiseSignal& truth, double radius, double lo, double hi) {
  double total = 0.0;
  double cur_lo = 0.0;
  double cur_hi = 0.0;
  bool open = false;
  for (const Jump& j : truth.jumps()) {
    const double a = std::max(lo, j.location - radius);
    const double b = std::min(hi, j.location + radius);
    if (b <= a) {
      continue;
    }
    if (open && a <= cur_hi) {
      cur_hi = std::max(cur_hi, b);
    } else {
      if (open) {
        total += cur_hi - cur_lo;
      }
      cur_lo = a;
      cur_hi = b;
      open = true;
    }
  }
  if (open) {
    total += cur_hi - cur_lo;
  }
  return total;
}

}  // namespace

RegionSizes region_sizes(const PiecewiseSignal& truth, double b, double support_radius,
                         double lo, double hi) {
  RegionSizes r;
  r.signal = union_length(truth, b, lo, hi);
  r.smoothed_signal = union_length(truth, support_radius, lo, hi);
  // |S1,gamma \ S1^b| = |S1,gamma u S1^b| - |S1^b|
  r.transition = union_length(truth, std::max(b, support_radius), lo, hi) - r.signal;
  return r;
}

}  // namespace stemcpd
