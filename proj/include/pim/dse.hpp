#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pim/simulator.hpp"

namespace pim {
namespace dse {

// One (strategy, write:compute ratio) corner of the design space at a fixed
// off-chip bandwidth.
struct DesignPoint {
  StrategyKind strategy = StrategyKind::InSitu;
  Rational ratio{1};               // t_r : t_p
  std::int64_t n_in = 1;
  std::int64_t num_macros = 1;     // integer, fitted to the strategy's group structure
  Rational supported_fractional{1};// un-rounded model value, kept for comparison
  Rational exec_time_norm{1};      // cycles to finish total_work layer-tiles
  std::optional<std::uint64_t> simulated_cycles;
  std::optional<double> model_error;  // relative, vs simulated steady throughput
  bool rounding_affected = false;     // integer fitting moved this point off the model
};

struct SkippedRatio {
  Rational ratio;
  std::string reason;
};

struct ExploreResult {
  std::vector<DesignPoint> points;    // sweep order, in-situ/naive/gpp per ratio
  std::vector<SkippedRatio> skipped;  // ratios with no integer batch size
};

// Sweeps t_r:t_p ratios at the config's bandwidth: per strategy, the macro
// count sustainable at full bandwidth usage and the modeled time to finish
// total_work layer-tiles. Ratios that need a fractional batch size are
// skipped with a diagnostic.
ExploreResult explore(const AcceleratorConfig& cfg, const std::vector<Rational>& ratio_sweep,
                      std::int64_t total_work = 1024);

struct ValidationReport {
  double modeled_throughput = 0.0;    // layer-tiles per cycle
  double simulated_throughput = 0.0;  // steady-state, from the simulator
  double relative_error = 0.0;
  bool exceeds_2pct = false;
  bool rounding_affected = false;
  std::uint64_t simulated_cycles = 0;
};

// Cross-checks one design point against the cycle-level simulator.
ValidationReport validate_point(const DesignPoint& point, const AcceleratorConfig& cfg,
                                std::int64_t total_work = 1024);

// `strategy,ratio,n_in,num_macros,exec_time_norm,simulated_cycles,model_error`
void write_csv(std::ostream& out, const std::vector<DesignPoint>& points);

// "1:8..8:1" (endpoints inclusive, stepping the larger side) or "1:3,1:1,2:1".
std::vector<Rational> parse_sweep(const std::string& text);

}  // namespace dse
}  // namespace pim
