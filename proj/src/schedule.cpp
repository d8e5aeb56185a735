#include "pim/schedule.hpp"

#include <algorithm>
#include <numeric>

namespace pim {

namespace {

std::vector<RoundSpec> rounds_for(const AcceleratorConfig& cfg, const WorkloadSpec& workload) {
  workload.validate(cfg);
  std::vector<RoundSpec> rounds;
  rounds.reserve(workload.tasks.size());
  for (const auto& t : workload.tasks)
    rounds.push_back({t.weight_bytes, cfg.ops_per_input() * t.n_in * t.batches});
  return rounds;
}

// Contiguous id ranges; the first `remainder` groups carry one extra macro.
std::vector<std::vector<std::int64_t>> split_groups(std::int64_t active, std::int64_t count) {
  std::vector<std::vector<std::int64_t>> groups(static_cast<std::size_t>(count));
  const std::int64_t base = active / count;
  const std::int64_t remainder = active % count;
  std::int64_t next = 0;
  for (std::int64_t g = 0; g < count; ++g) {
    const std::int64_t size = base + (g < remainder ? 1 : 0);
    for (std::int64_t i = 0; i < size; ++i) groups[static_cast<std::size_t>(g)].push_back(next++);
  }
  return groups;
}

}  // namespace

std::size_t SchedulePlan::group_of(std::int64_t macro_id) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (std::find(groups[g].begin(), groups[g].end(), macro_id) != groups[g].end()) return g;
  throw InvalidPlanError("macro id not present in any group");
}

void SchedulePlan::validate() const {
  if (active_macros < 1) throw InvalidPlanError("plan needs at least one active macro");
  if (groups.empty() || groups.size() != group_start_offset.size())
    throw InvalidPlanError("groups and group offsets must align");
  std::vector<bool> seen(static_cast<std::size_t>(active_macros), false);
  for (const auto& g : groups) {
    if (g.empty()) throw InvalidPlanError("empty macro group");
    for (std::int64_t id : g) {
      if (id < 0 || id >= active_macros) throw InvalidPlanError("macro id out of range");
      if (seen[static_cast<std::size_t>(id)]) throw InvalidPlanError("macro id in two groups");
      seen[static_cast<std::size_t>(id)] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InvalidPlanError("groups must partition all active macros");
  for (std::size_t g = 0; g < group_start_offset.size(); ++g) {
    if (group_start_offset[g] < 0) throw InvalidPlanError("negative group offset");
    if (g > 0 && group_start_offset[g] < group_start_offset[g - 1])
      throw InvalidPlanError("group offsets must be non-decreasing");
  }
  if (per_macro_rounds.empty()) throw InvalidPlanError("plan has no rounds");
  for (const auto& r : per_macro_rounds)
    if (r.rewrite_bytes <= 0 || r.compute_ops <= 0)
      throw InvalidPlanError("round work units must be strictly positive");
}

SchedulePlan plan_in_situ(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                          std::int64_t active) {
  if (active < 1) throw InvalidPlanError("in-situ plan needs active >= 1");
  SchedulePlan plan;
  plan.strategy = StrategyKind::InSitu;
  plan.active_macros = active;
  plan.groups = split_groups(active, 1);
  plan.group_start_offset = {0};
  plan.barrier_policy = BarrierPolicy::GlobalPhaseBarrier;
  plan.per_macro_rounds = rounds_for(cfg, workload);
  return plan;
}

SchedulePlan plan_naive(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                        std::int64_t active) {
  if (active < 2 || active % 2 != 0)
    throw InvalidPlanError("naive ping-pong needs an even macro count >= 2, got " +
                           std::to_string(active));
  SchedulePlan plan;
  plan.strategy = StrategyKind::NaivePingPong;
  plan.active_macros = active;
  plan.groups = split_groups(active, 2);
  const std::int64_t tr = rat_floor(time_rewrite(cfg));
  plan.group_start_offset = {0, tr};
  plan.barrier_policy = BarrierPolicy::BankAlternation;
  plan.per_macro_rounds = rounds_for(cfg, workload);
  return plan;
}

SchedulePlan plan_gpp(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
                      std::int64_t active) {
  if (active < 1) throw InvalidPlanError("gpp plan needs active >= 1");
  auto rounds = rounds_for(cfg, workload);
  const Rational tr = time_rewrite(cfg);
  // Group count follows the first layer's write:compute balance.
  const Rational tp = Rational(rounds.front().compute_ops);
  const std::int64_t g_raw = rat_round_half_down((tp + tr) / tr);
  const std::int64_t g = std::clamp<std::int64_t>(g_raw, 1, active);

  SchedulePlan plan;
  plan.strategy = StrategyKind::GeneralizedPingPong;
  plan.active_macros = active;
  plan.groups = split_groups(active, g);
  plan.group_start_offset.resize(static_cast<std::size_t>(g));
  for (std::int64_t i = 0; i < g; ++i)
    plan.group_start_offset[static_cast<std::size_t>(i)] = rat_floor(Rational(i) * tr);
  plan.barrier_policy = BarrierPolicy::FreeRunning;
  plan.per_macro_rounds = std::move(rounds);
  return plan;
}

SchedulePlan make_plan(StrategyKind strategy, const AcceleratorConfig& cfg,
                       const WorkloadSpec& workload, std::int64_t active) {
  switch (strategy) {
    case StrategyKind::InSitu: return plan_in_situ(cfg, workload, active);
    case StrategyKind::NaivePingPong: return plan_naive(cfg, workload, active);
    case StrategyKind::GeneralizedPingPong: return plan_gpp(cfg, workload, active);
  }
  throw InvalidParameterError("unknown strategy");
}

}  // namespace pim
