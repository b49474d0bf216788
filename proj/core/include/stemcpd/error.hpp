#pragma once

#include <stdexcept>
#include <string>

namespace stemcpd {

enum class Errc {
  invalid_parameter,
  bandwidth_too_small,
  bandwidth_too_large,
  cannot_estimate,
  moment_inconsistency,
  degenerate_config,
  grid_mismatch,
  invalid_input,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace stemcpd
