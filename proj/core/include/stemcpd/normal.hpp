#pragma once

namespace stemcpd::normal {

double pdf(double x) noexcept;

/// Lower tail Phi(x). Computed through erfc so both tails keep full relative precision.
double cdf(double x) noexcept;

/// Upper tail 1 - Phi(x).
double sf(double x) noexcept;

/// Phi^{-1}(p) for p in (0, 1).
double quantile(double p);

}  // namespace stemcpd::normal
