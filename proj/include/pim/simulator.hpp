#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pim/schedule.hpp"

namespace pim {

// Pending weight-write traffic for one macro in one cycle.
struct RewriteRequest {
  std::int64_t macro_id = 0;
  std::int64_t bytes = 0;           // <= rewrite_speed
  std::uint64_t started_cycle = 0;  // cycle the macro entered its rewrite
};

// Shares the per-cycle off-chip budget. Requests are served in order of
// (earlier rewrite start cycle, then ascending macro id); each gets its full
// ask or whatever budget remains. Returned grants align with the input order.
std::vector<std::int64_t> arbitrate(const std::vector<RewriteRequest>& requests,
                                    std::int64_t band);

// Completion bookkeeping for one (rewrite, compute) round of one macro.
struct RoundRecord {
  std::uint64_t end_cycle = 0;   // cycle the round's last OU-op retired
  std::uint64_t busy_cycles = 0; // granted-rewrite cycles + compute cycles
  std::int64_t ops = 0;
};

struct SimTrace {
  std::vector<std::int64_t> granted_bytes;        // per cycle
  std::vector<std::string> macro_states;          // per cycle, one of {I,R,C} per macro
  bool has_states = false;
  std::vector<std::vector<RoundRecord>> rounds;   // [macro][round]
};

struct SimMetrics {
  std::uint64_t total_cycles = 0;
  std::uint64_t steady_start = 0;           // [steady_start, steady_end)
  std::uint64_t steady_end = 0;
  bool steady_is_whole_run = false;         // set when the warm-up/drain split failed
  double macro_utilization = 0.0;           // busy fraction over the steady window
  double bandwidth_utilization = 0.0;       // granted / (band * cycles) over the window
  double bandwidth_idle_fraction = 0.0;     // zero-grant cycles over the window
  double steady_ops_per_cycle = 0.0;        // OU-ops/cycle over whole per-macro rounds
  std::int64_t peak_bandwidth = 0;          // max granted bytes in any cycle
  std::uint64_t completed_layer_tiles = 0;
  double throughput = 0.0;                  // layer-tiles per cycle, whole run
  std::uint64_t total_granted_bytes = 0;
  std::uint64_t total_retired_ops = 0;
};

struct SimOptions {
  bool record_states = true;
  std::uint64_t max_cycles = 0;  // 0 = derive a generous bound from the inputs
};

struct SimResult {
  SimMetrics metrics;
  SimTrace trace;
};

// Deterministic cycle-level execution of a plan under the shared bandwidth
// cap. Each cycle: rewriting macros request min(s, remaining) bytes, the
// arbiter grants within the budget, every computing macro retires one OU-op,
// and phase transitions honor the plan's barrier policy and group offsets.
// A macro never rewrites and computes at once, and a starved rewriter counts
// as idle. Throws InvalidPlanError when the plan does not match cfg/workload.
SimResult run(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
              const SchedulePlan& plan, const SimOptions& opts = {});

// Derives the steady-state window (after every macro finished round one,
// before any macro's final round begins) and the utilization metrics over
// it. Falls back to whole-run metrics with a flag when the workload is too
// short (< 3 layers) to split off warm-up and drain.
SimMetrics measure_steady_state(const SimTrace& trace, const SchedulePlan& plan,
                                std::int64_t band);

// CSV with header `cycle,granted_bytes,macro_states`; macro_states is a
// fixed-width string of {I,R,C} per macro.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

}  // namespace pim
