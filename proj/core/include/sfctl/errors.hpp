#pragma once

#include <stdexcept>
#include <string>

namespace sfctl {

// Invalid configuration; maps to process exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite state or a violated model assumption mid-run; exit code 3.
struct DivergenceError : std::runtime_error {
  double t;
  DivergenceError(double t_, const std::string& msg)
      : std::runtime_error(msg), t(t_) {}
};

}  // namespace sfctl
