#include "oracles.hpp"

#include "stemcpd/detect.hpp"
#include "stemcpd/error.hpp"
#include "stemcpd/kernel.hpp"
#include "stemcpd/synth.hpp"

#include <doctest.h>

#include <cmath>

using namespace stemcpd;

namespace {

KernelSpec derivative_kernel(double gamma) {
  KernelSpec k;
  k.gamma = gamma;
  k.order = 1;
  return k;
}

std::vector<std::size_t> indices(const std::vector<Extremum>& ex, ExtremumKind kind) {
  std::vector<std::size_t> out;
  for (const Extremum& e : ex) {
    if (e.kind == kind) out.push_back(e.index);
  }
  return out;
}

}  // namespace

TEST_CASE("extrema of short sequences") {
  const std::vector<double> peak{0.0, 1.0, 0.0};
  auto ex = find_local_extrema(peak);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].index == 1);
  CHECK(ex[0].is_max());
  CHECK(ex[0].height == 1.0);

  const std::vector<double> plateau{0.0, 1.0, 1.0, 0.0};
  ex = find_local_extrema(plateau);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].index == 1);
  CHECK(ex[0].is_max());

  const std::vector<double> valley{3.0, 1.0, 1.0, 1.0, 2.0};
  ex = find_local_extrema(valley);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].index == 1);
  CHECK_FALSE(ex[0].is_max());

  const std::vector<double> alternating{0.0, 1.0, 0.0, 1.0, 0.0};
  ex = find_local_extrema(alternating);
  CHECK(indices(ex, ExtremumKind::maximum) == std::vector<std::size_t>{1, 3});
  CHECK(indices(ex, ExtremumKind::minimum) == std::vector<std::size_t>{2});

  const std::vector<double> flat(10, 2.5);
  CHECK(find_local_extrema(flat).empty());

  // A plateau running into the boundary is not an extremum.
  const std::vector<double> shelf{0.0, 1.0, 1.0};
  CHECK(find_local_extrema(shelf).empty());
  const std::vector<double> monotone{0.0, 1.0, 2.0, 3.0};
  CHECK(find_local_extrema(monotone).empty());
  CHECK(find_local_extrema(std::span<const double>{}).empty());
}

TEST_CASE("convolution matches the direct full sum") {
  const TimeSeries y = sample_noise(NoiseModel{1.0, 2.0}, 2000, 3);
  for (int order = 0; order <= 3; ++order) {
    KernelSpec spec = derivative_kernel(6.0);
    spec.order = order;
    const KernelWeights w = kernel_weights(spec, 1.0);
    const SmoothedSeries s = smooth(y, w);
    const std::vector<double> ref = oracle::direct_convolve(y.values, w.taps());
    CHECK(s.begin == w.half_width());
    CHECK(s.end == y.size() - w.half_width());
    double err = 0.0;
    for (std::size_t t = s.begin; t < s.end; ++t) err = std::max(err, std::abs(s.series.values[t] - ref[t]));
    INFO("order " << order);
    CHECK(err < 1e-13);
  }
}

TEST_CASE("derivative of a constant is exactly zero") {
  TimeSeries y;
  y.values.assign(500, 7.25);
  const SmoothedSeries d = smooth_derivative(y, derivative_kernel(6.0));
  for (double v : d.interior()) REQUIRE(v == 0.0);
  CHECK(find_local_extrema(d).empty());
}

TEST_CASE("noiseless staircase recovers every change point") {
  const long L = 1000;
  const PiecewiseSignal stairs = make_staircase(1.0, 100, L);
  const TimeSeries y = sample_signal(stairs, L);
  const SmoothedSeries d = smooth_derivative(y, derivative_kernel(6.0));
  const std::vector<Extremum> ex = find_local_extrema(d);
  const auto maxima = indices(ex, ExtremumKind::maximum);
  // The first and last change points are more than K = 24 samples from the edges.
  REQUIRE(maxima.size() == stairs.count());
  for (std::size_t j = 0; j < stairs.count(); ++j) {
    const double loc = y.time_at(maxima[j]);
    CHECK(std::abs(loc - stairs.jumps()[j].location) <= 1.0);
  }
  CHECK(indices(ex, ExtremumKind::minimum).size() == stairs.count() - 1);
}

TEST_CASE("negating the input swaps maxima and minima") {
  const TimeSeries y = sample_noise(NoiseModel{1.0, 2.0}, 3000, 21);
  TimeSeries neg = y;
  for (double& v : neg.values) v = -v;
  const auto a = find_local_extrema(smooth_derivative(y, derivative_kernel(4.0)));
  const auto b = find_local_extrema(smooth_derivative(neg, derivative_kernel(4.0)));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == b[i].index);
    CHECK(a[i].is_max() != b[i].is_max());
    CHECK(a[i].height == -b[i].height);
  }
}

TEST_CASE("extrema stay away from the boundary and alternate") {
  const TimeSeries y = sample_noise(NoiseModel{1.0, 0.0}, 5000, 8);
  const SmoothedSeries d = smooth_derivative(y, derivative_kernel(3.0));
  const auto ex = find_local_extrema(d);
  REQUIRE(!ex.empty());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    CHECK(ex[i].index > d.begin);
    CHECK(ex[i].index + 1 < d.end);
    CHECK(ex[i].location == y.time_at(ex[i].index));
    if (i > 0) CHECK(ex[i].is_max() != ex[i - 1].is_max());
  }
  CHECK(indices(ex, ExtremumKind::maximum).size() == oracle::count_maxima(d.interior()));
}

TEST_CASE("extremum density of smoothed noise matches the Rice rate") {
  // Rate of maxima sqrt(lam6 / lam4) / (2 pi) = sqrt(5 / 2) / (2 pi sqrt(40)) for nu = 2, gamma = 6.
  const std::size_t n = 400000;
  const TimeSeries y = sample_noise(NoiseModel{1.0, 2.0}, n, 2024);
  const SmoothedSeries d = smooth_derivative(y, derivative_kernel(6.0));
  const auto ex = find_local_extrema(d);
  const double expected = 2.0 * 0.0397887357729738 * static_cast<double>(d.interior_size());
  CHECK(static_cast<double>(ex.size()) == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("series shorter than the kernel is rejected") {
  TimeSeries y;
  y.values.assign(48, 0.0);
  try {
    smooth_derivative(y, derivative_kernel(6.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bandwidth_too_large);
  }
  y.values.assign(49, 0.0);
  const SmoothedSeries d = smooth_derivative(y, derivative_kernel(6.0));
  CHECK(d.interior_size() == 1);
  CHECK(find_local_extrema(d).empty());

  KernelSpec zero_order = derivative_kernel(6.0);
  zero_order.order = 0;
  CHECK_THROWS_AS(smooth_derivative(y, zero_order), Error);
}
