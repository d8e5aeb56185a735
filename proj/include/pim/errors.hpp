#pragma once

#include <stdexcept>
#include <string>

namespace pim {

struct InvalidParameterError : std::runtime_error {
  explicit InvalidParameterError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleWorkloadError : std::runtime_error {
  explicit InfeasibleWorkloadError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPlanError : std::runtime_error {
  explicit InvalidPlanError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasiblePlanError : std::runtime_error {
  explicit InfeasiblePlanError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pim
