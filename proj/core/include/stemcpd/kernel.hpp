#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stemcpd {

enum class KernelFamily {
  truncated_gaussian,
};

/// Smoothing kernel w_gamma(t) = w(t / gamma) / gamma and its derivatives.
///
/// The base shape w is unimodal, symmetric, non-negative, supported on
/// [-c, c] and integrates to one; the scaled kernel is therefore supported on
/// [-c * gamma, c * gamma]. `order` selects the derivative of w_gamma that is
/// sampled (0 = the kernel itself).
struct KernelSpec {
  KernelFamily family = KernelFamily::truncated_gaussian;
  double gamma = 1.0;
  double c = 4.0;
  int order = 0;

  void validate() const;

  KernelSpec with_order(int k) const {
    KernelSpec copy = *this;
    copy.order = k;
    return copy;
  }
};

/// Analytic value of the order-th derivative of w_gamma at t (zero outside the support).
double kernel_value(const KernelSpec& spec, double t);

/// Kernel taps on a uniform grid, centered: taps[K + i] is the sample at offset i * spacing.
class KernelWeights {
public:
  KernelWeights(std::vector<double> taps, double spacing, int order);

  std::span<const double> taps() const noexcept { return taps_; }
  std::size_t half_width() const noexcept { return taps_.size() / 2; }
  std::size_t size() const noexcept { return taps_.size(); }
  double spacing() const noexcept { return spacing_; }
  int order() const noexcept { return order_; }
  bool odd() const noexcept { return order_ % 2 != 0; }

  /// Sample at grid offset i (|i| <= K).
  double at(std::ptrdiff_t offset) const noexcept {
    return taps_[static_cast<std::size_t>(offset + static_cast<std::ptrdiff_t>(half_width()))];
  }

private:
  std::vector<double> taps_;
  double spacing_;
  int order_;
};

/// Samples of the order-th derivative of w_gamma at offsets -K..K (K = ceil(c gamma / spacing)).
///
/// Order-0 taps are rescaled to unit action (sum * spacing == 1). Odd orders are
/// exactly antisymmetric and even orders exactly symmetric.
///
/// Throws Error(invalid_parameter) for non-positive gamma, c or spacing and
/// Error(bandwidth_too_small) when fewer than three samples fall inside the support.
KernelWeights kernel_weights(const KernelSpec& spec, double spacing);

}  // namespace stemcpd
