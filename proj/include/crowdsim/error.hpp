#pragma once

#include <stdexcept>
#include <string>

namespace crowdsim {

/// Invalid parameters, scenario layout, or configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The numerics left the admissible set (NaN, CFL violation, constraint break).
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File output or input failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crowdsim
