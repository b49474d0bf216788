#pragma once

#include <cstdint>
#include <random>

namespace stemcpd {

/// Portable seeded generator: std::mt19937_64 seeded through splitmix64, with
/// Box-Muller normals over 53-bit uniforms. The output stream depends only on
/// the seed, never on the standard library implementation.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Uniform on the open interval (0, 1).
  double uniform();

  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replicate r under base seed s: s XOR r.
constexpr std::uint64_t replicate_seed(std::uint64_t base, std::uint64_t replicate) noexcept {
  return base ^ replicate;
}

}  // namespace stemcpd
