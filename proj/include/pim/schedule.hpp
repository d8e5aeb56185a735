#pragma once

#include <cstdint>
#include <vector>

#include "pim/analytic.hpp"
#include "pim/workload.hpp"

namespace pim {

enum class BarrierPolicy {
  GlobalPhaseBarrier,  // all macros rewrite, then all compute
  BankAlternation,     // two banks in antiphase, compute grants strictly alternate
  FreeRunning,         // each macro chains rewrite->compute->rewrite on its own
};

// One (rewrite, compute) phase pair a macro executes per layer.
struct RoundSpec {
  std::int64_t rewrite_bytes = 0;
  std::int64_t compute_ops = 0;  // OU-operations, one retired per cycle
};

// Per-macro timeline recipe: which group a macro belongs to, when the group
// may start its first rewrite, and how later phases are gated.
struct SchedulePlan {
  StrategyKind strategy = StrategyKind::InSitu;
  std::int64_t active_macros = 0;
  std::vector<std::vector<std::int64_t>> groups;     // partition of [0, active_macros)
  std::vector<std::int64_t> group_start_offset;      // cycles, non-decreasing
  BarrierPolicy barrier_policy = BarrierPolicy::GlobalPhaseBarrier;
  std::vector<RoundSpec> per_macro_rounds;           // identical stream for every macro

  std::size_t group_of(std::int64_t macro_id) const;
  void validate() const;  // structural invariants; throws InvalidPlanError
};

// All macros in one group behind a global phase barrier: nobody computes
// layer i until everyone finished rewriting it, and vice versa.
SchedulePlan plan_in_situ(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                          std::int64_t active);

// Two equal banks in antiphase; requires an even macro count. The bank that
// finishes early still waits for its partner before the roles swap.
SchedulePlan plan_naive(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                        std::int64_t active);

// G = clamp(round((t_p + t_r)/t_r), 1, active) groups (ties round down),
// sizes differing by at most one (larger groups first), group g staggered by
// g*t_r; free-running thereafter.
SchedulePlan plan_gpp(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                      std::int64_t active);

SchedulePlan make_plan(StrategyKind strategy, const AcceleratorConfig& cfg,
                       const WorkloadSpec& workload, std::int64_t active);

}  // namespace pim
