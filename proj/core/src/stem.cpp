#include "stemcpd/stem.hpp"

#include "stemcpd/error.hpp"

#include <limits>

namespace stemcpd {

std::vector<Extremum> DetectionResult::significant_extrema() const {
  std::vector<Extremum> out;
  out.reserve(significant.size());
  for (std::size_t i : significant) {
    out.push_back(extrema[i]);
  }
  return out;
}

DetectionResult detect_change_points(const TimeSeries& y, const KernelSpec& kernel,
                                     const MomentSource& source, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_parameter, "alpha must be in (0, 1)");
  }
  y.validate();
  const SmoothedSeries dy = smooth_derivative(y, kernel.with_order(1));

  DetectionResult out;
  out.extrema = find_local_extrema(dy);

  if (const auto* closed = std::get_if<ClosedFormSource>(&source)) {
    out.moments = closed_form_moments(closed->model, kernel.gamma);
  } else if (!out.extrema.empty()) {
    out.moments = estimate_moments_empirical(y, kernel, std::get<EmpiricalSource>(source).trim);
  }

  std::vector<double> pvalues;
  if (out.moments) {
    assign_pvalues(out.extrema, *out.moments);
    pvalues.reserve(out.extrema.size());
    for (const Extremum& e : out.extrema) {
      pvalues.push_back(e.p_value);
    }
  }
  out.bh = bh_select(pvalues, alpha);
  out.bh.u_threshold = out.moments ? bh_height_threshold(out.bh, *out.moments)
                                   : -std::numeric_limits<double>::infinity();
  out.significant = out.bh.rejected;
  return out;
}

}  // namespace stemcpd
