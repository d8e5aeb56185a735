#pragma once

#include <optional>
#include <string>

#include "pim/analytic.hpp"
#include "pim/workload.hpp"

namespace pim {

// Parsed form of the sectioned key=value run configuration:
//   [accelerator] hardware parameters
//   [workload]    synthetic (layers, n_in) or a GeMM problem
//   [strategy]    kind = in_situ | naive | gpp, optional active macro count
struct RunConfig {
  AcceleratorConfig accelerator;
  bool synthetic = true;
  std::int64_t layers = 8;
  std::int64_t n_in = 8;
  GemmSpec gemm;
  StrategyKind strategy = StrategyKind::GeneralizedPingPong;
  std::optional<std::int64_t> active_macros;
};

// Throws ConfigError with a field-level message on any invalid value;
// accelerator invariants are enforced here, at parse time.
RunConfig parse_config(const std::string& path);

StrategyKind parse_strategy(const std::string& name);

WorkloadSpec build_workload(const RunConfig& rc);

}  // namespace pim
