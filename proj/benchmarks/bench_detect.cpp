#include "stemcpd/commands.hpp"
#include "stemcpd/detect.hpp"
#include "stemcpd/infer.hpp"
#include "stemcpd/stem.hpp"
#include "stemcpd/synth.hpp"

#include <benchmark/benchmark.h>

using namespace stemcpd;

namespace {

KernelSpec derivative_kernel(double gamma) {
  KernelSpec k;
  k.gamma = gamma;
  k.order = 1;
  return k;
}

void BM_SampleNoise(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_noise(NoiseModel{1.0, 2.0}, n, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleNoise)->Arg(12000)->Arg(1000000);

void BM_SmoothDerivative(benchmark::State& state) {
  const TimeSeries y = sample_noise(NoiseModel{1.0, 2.0}, 12000, 1);
  const KernelWeights w = kernel_weights(derivative_kernel(static_cast<double>(state.range(0))), 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth(y, w));
  }
  state.SetItemsProcessed(state.iterations() * 12000);
}
BENCHMARK(BM_SmoothDerivative)->Arg(2)->Arg(6)->Arg(10);

void BM_Detect(benchmark::State& state) {
  const long L = 12000;
  const TimeSeries y = compose(make_staircase(2.0, 100, L),
                               sample_noise(NoiseModel{1.0, 2.0}, static_cast<std::size_t>(L), 3));
  const MomentSource source = state.range(0) == 0 ? MomentSource{ClosedFormSource{{1.0, 2.0}}}
                                                  : MomentSource{EmpiricalSource{0.1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_change_points(y, derivative_kernel(6.0), source, 0.05));
  }
}
BENCHMARK(BM_Detect)->ArgName("empirical")->Arg(0)->Arg(1);

void BM_SimulationReplicate(benchmark::State& state) {
  SimulateRequest req;
  req.jumps = {3.0};
  req.gammas = {6.0};
  req.tolerances = {8.0};
  std::size_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_replicate(req, 3.0, 6.0, r++));
  }
}
BENCHMARK(BM_SimulationReplicate);

void BM_PeakHeightQuantile(benchmark::State& state) {
  const SpectralMoments m = closed_form_moments(NoiseModel{1.0, 2.0}, 6.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(peak_height_quantile(0.0101396697, m));
  }
}
BENCHMARK(BM_PeakHeightQuantile);

}  // namespace

BENCHMARK_MAIN();
