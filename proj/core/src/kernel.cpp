#include "stemcpd/kernel.hpp"

#include "stemcpd/error.hpp"
#include "stemcpd/normal.hpp"

#include <cmath>
#include <string>

namespace stemcpd {

void KernelSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(Errc::invalid_parameter, "kernel bandwidth must be positive");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(Errc::invalid_parameter, "kernel support half-width must be positive");
  }
  if (order < 0 || order > 3) {
    throw Error(Errc::invalid_parameter, "kernel derivative order must be in 0..3");
  }
}

namespace {

// d^k/dx^k phi(x) = (-1)^k He_k(x) phi(x), probabilists' Hermite polynomials.
double gaussian_derivative(int order, double x) {
  const double phi = normal::pdf(x);
  switch (order) {
    case 0: return phi;
    case 1: return -x * phi;
    case 2: return (x * x - 1.0) * phi;
    case 3: return (3.0 * x - x * x * x) * phi;
  }
  return 0.0;
}

}  // namespace

double kernel_value(const KernelSpec& spec, double t) {
  spec.validate();
  if (std::abs(t) > spec.c * spec.gamma) {
    return 0.0;
  }
  // w_gamma^(k)(t) = w^(k)(t / gamma) / gamma^(k + 1)
  const double x = t / spec.gamma;
  return gaussian_derivative(spec.order, x) / std::pow(spec.gamma, spec.order + 1);
}

KernelWeights::KernelWeights(std::vector<double> taps, double spacing, int order)
    : taps_(std::move(taps)), spacing_(spacing), order_(order) {
  if (taps_.size() % 2 == 0) {
    throw Error(Errc::invalid_parameter, "kernel tap count must be odd");
  }
}

KernelWeights kernel_weights(const KernelSpec& spec, double spacing) {
  spec.validate();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(Errc::invalid_parameter, "grid spacing must be positive");
  }
  const double reach = spec.c * spec.gamma / spacing;
  if (std::floor(reach) < 1.0) {
    throw Error(Errc::bandwidth_too_small,
                "kernel support covers fewer than 3 grid samples (c * gamma = " +
                    std::to_string(spec.c * spec.gamma) + ", spacing = " +
                    std::to_string(spacing) + ")");
  }
  const auto half = static_cast<std::size_t>(std::ceil(reach));
  std::vector<double> taps(2 * half + 1, 0.0);
  const double sign = (spec.order % 2 != 0) ? -1.0 : 1.0;
  for (std::size_t i = 0; i <= half; ++i) {
    const double v = kernel_value(spec, static_cast<double>(i) * spacing);
    taps[half + i] = v;
    taps[half - i] = sign * v;
  }
  if (spec.order % 2 != 0) {
    taps[half] = 0.0;
  }

  if (spec.order == 0) {
    // Pairwise summation from the tails inward keeps the result symmetric.
    double total = taps[half];
    for (std::size_t i = half; i >= 1; --i) {
      total += 2.0 * taps[half + i];
    }
    const double scale = 1.0 / (total * spacing);
    for (double& w : taps) {
      w *= scale;
    }
  }
  return KernelWeights(std::move(taps), spacing, spec.order);
}

}  // namespace stemcpd
