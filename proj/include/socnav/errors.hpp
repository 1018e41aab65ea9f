#pragma once

#include <stdexcept>
#include <string>

namespace socnav {

/// Invalid scenario, parameter set, or call contract.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace socnav
