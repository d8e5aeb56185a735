#include "pim/simulator.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace pim {

std::vector<std::int64_t> arbitrate(const std::vector<RewriteRequest>& requests,
                                    std::int64_t band) {
  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (requests[a].started_cycle != requests[b].started_cycle)
      return requests[a].started_cycle < requests[b].started_cycle;
    return requests[a].macro_id < requests[b].macro_id;
  });
  std::vector<std::int64_t> grants(requests.size(), 0);
  std::int64_t budget = band;
  for (std::size_t idx : order) {
    const std::int64_t g = std::min(requests[idx].bytes, budget);
    grants[idx] = g;
    budget -= g;
  }
  return grants;
}

namespace {

enum class MacroSt { WaitRewrite, Rewriting, WaitCompute, Computing, Finished };

struct MacroRt {
  MacroSt st = MacroSt::WaitRewrite;
  std::size_t round = 0;
  std::int64_t rewrite_remaining = 0;
  std::int64_t ops_remaining = 0;
  std::uint64_t rewrite_entry_cycle = 0;
  std::size_t bank = 0;  // group index (bank id under BankAlternation)
};

// Global phase sequencing for the barriered policies. Phases are numbered so
// that an op completes strictly inside its own phase:
//   GlobalPhaseBarrier: phase 2r = all rewrite round r, 2r+1 = all compute r.
//   BankAlternation:    phase 0 = bank0 rewrites round 0;
//                       phase 2r+1 = bank0 computes r  + bank1 rewrites r;
//                       phase 2r+2 = bank1 computes r  + bank0 rewrites r+1.
struct PhaseState {
  BarrierPolicy policy = BarrierPolicy::GlobalPhaseBarrier;
  std::size_t rounds = 0;
  std::int64_t size0 = 0, size1 = 0, active = 0;
  std::size_t current = 0;
  std::int64_t remaining = 0;

  void init(const SchedulePlan& plan) {
    policy = plan.barrier_policy;
    rounds = plan.per_macro_rounds.size();
    active = plan.active_macros;
    if (policy == BarrierPolicy::BankAlternation) {
      size0 = static_cast<std::int64_t>(plan.groups[0].size());
      size1 = static_cast<std::int64_t>(plan.groups[1].size());
    }
    current = 0;
    remaining = expected(0);
  }

  std::int64_t expected(std::size_t p) const {
    if (policy == BarrierPolicy::GlobalPhaseBarrier) return active;
    if (p == 0) return size0;
    if (p % 2 == 1) return size0 + size1;                  // bank0 compute + bank1 rewrite
    const std::size_t r = p / 2 - 1;                       // bank1 compute round r
    return size1 + (r + 1 < rounds ? size0 : 0);
  }

  void op_done() {
    if (--remaining == 0) {
      ++current;
      remaining = expected(current);
    }
  }

  bool rewrite_eligible(std::size_t bank, std::size_t r) const {
    if (policy == BarrierPolicy::GlobalPhaseBarrier) return current == 2 * r;
    if (bank == 0) return current == (r == 0 ? 0 : 2 * r);
    return current == 2 * r + 1;
  }

  bool compute_eligible(std::size_t bank, std::size_t r) const {
    if (policy == BarrierPolicy::GlobalPhaseBarrier) return current == 2 * r + 1;
    return current == (bank == 0 ? 2 * r + 1 : 2 * r + 2);
  }
};

std::uint64_t default_cycle_bound(const SchedulePlan& plan, std::int64_t band) {
  std::uint64_t per_round = 0;
  for (const auto& r : plan.per_macro_rounds) {
    const std::uint64_t rewrite_serialized =
        static_cast<std::uint64_t>(plan.active_macros) *
        static_cast<std::uint64_t>((r.rewrite_bytes + band - 1) / band + r.rewrite_bytes);
    per_round += rewrite_serialized + 2ull * static_cast<std::uint64_t>(r.compute_ops) + 8;
  }
  const std::uint64_t max_offset =
      static_cast<std::uint64_t>(plan.group_start_offset.back());
  return max_offset + per_round * 2 + 1024;
}

}  // namespace

SimResult run(const AcceleratorConfig& cfg, const WorkloadSpec& workload,
              const SchedulePlan& plan, const SimOptions& opts) {
  plan.validate();
  workload.validate(cfg);
  if (plan.per_macro_rounds.size() != workload.tasks.size())
    throw InvalidPlanError("plan round count does not match the workload");
  for (std::size_t i = 0; i < workload.tasks.size(); ++i) {
    const auto& t = workload.tasks[i];
    const auto& r = plan.per_macro_rounds[i];
    if (r.rewrite_bytes != t.weight_bytes ||
        r.compute_ops != cfg.ops_per_input() * t.n_in * t.batches)
      throw InvalidPlanError("plan round work does not match cfg/workload");
  }
  if (plan.barrier_policy == BarrierPolicy::BankAlternation && plan.groups.size() != 2)
    throw InvalidPlanError("bank alternation needs exactly two groups");

  const std::int64_t band = cfg.offchip_bandwidth;
  const std::int64_t speed = cfg.rewrite_speed;
  const std::size_t active = static_cast<std::size_t>(plan.active_macros);
  const std::size_t rounds = plan.per_macro_rounds.size();

  std::vector<MacroRt> macros(active);
  std::vector<std::int64_t> offset_of(active, 0);
  for (std::size_t g = 0; g < plan.groups.size(); ++g)
    for (std::int64_t id : plan.groups[g]) {
      macros[static_cast<std::size_t>(id)].bank = g;
      offset_of[static_cast<std::size_t>(id)] = plan.group_start_offset[g];
    }

  PhaseState phases;
  if (plan.barrier_policy != BarrierPolicy::FreeRunning) phases.init(plan);

  SimResult result;
  SimTrace& trace = result.trace;
  trace.has_states = opts.record_states;
  trace.rounds.assign(active, {});
  for (auto& r : trace.rounds) r.reserve(rounds);

  const std::uint64_t cycle_cap =
      opts.max_cycles ? opts.max_cycles : default_cycle_bound(plan, band);

  std::vector<RoundRecord> current_round(active);
  for (std::size_t m = 0; m < active; ++m)
    current_round[m].ops = plan.per_macro_rounds[0].compute_ops;

  std::vector<RewriteRequest> requests;
  std::vector<std::size_t> request_owner;
  std::size_t finished = 0;
  std::uint64_t cycle = 0;
  std::string states(active, 'I');

  SimMetrics& met = result.metrics;

  while (finished < active) {
    if (cycle >= cycle_cap)
      throw InvalidPlanError("simulation exceeded its cycle bound; plan is deadlocked");

    // Promote macros whose gate opened at the end of the previous cycle.
    for (std::size_t m = 0; m < active; ++m) {
      MacroRt& mac = macros[m];
      if (mac.st == MacroSt::WaitRewrite) {
        const bool ok = plan.barrier_policy == BarrierPolicy::FreeRunning
                            ? (mac.round > 0 ||
                               cycle >= static_cast<std::uint64_t>(offset_of[m]))
                            : phases.rewrite_eligible(mac.bank, mac.round);
        if (ok) {
          mac.st = MacroSt::Rewriting;
          mac.rewrite_remaining = plan.per_macro_rounds[mac.round].rewrite_bytes;
          mac.rewrite_entry_cycle = cycle;
        }
      } else if (mac.st == MacroSt::WaitCompute) {
        const bool ok = plan.barrier_policy == BarrierPolicy::FreeRunning
                            ? true
                            : phases.compute_eligible(mac.bank, mac.round);
        if (ok) {
          mac.st = MacroSt::Computing;
          mac.ops_remaining = plan.per_macro_rounds[mac.round].compute_ops;
        }
      }
    }

    // Collect and arbitrate this cycle's rewrite traffic.
    requests.clear();
    request_owner.clear();
    for (std::size_t m = 0; m < active; ++m) {
      MacroRt& mac = macros[m];
      if (mac.st == MacroSt::Rewriting) {
        requests.push_back({static_cast<std::int64_t>(m),
                            std::min<std::int64_t>(speed, mac.rewrite_remaining),
                            mac.rewrite_entry_cycle});
        request_owner.push_back(m);
      }
    }
    const std::vector<std::int64_t> grants = arbitrate(requests, band);

    std::int64_t granted_total = 0;
    if (opts.record_states) states.assign(active, 'I');

    for (std::size_t i = 0; i < grants.size(); ++i) {
      const std::size_t m = request_owner[i];
      MacroRt& mac = macros[m];
      granted_total += grants[i];
      if (grants[i] > 0) {
        mac.rewrite_remaining -= grants[i];
        current_round[m].busy_cycles += 1;
        if (opts.record_states) states[m] = 'R';
        if (mac.rewrite_remaining == 0) {
          mac.st = MacroSt::WaitCompute;
          if (plan.barrier_policy != BarrierPolicy::FreeRunning) phases.op_done();
        }
      }
    }

    for (std::size_t m = 0; m < active; ++m) {
      MacroRt& mac = macros[m];
      if (mac.st != MacroSt::Computing) continue;
      mac.ops_remaining -= 1;
      current_round[m].busy_cycles += 1;
      met.total_retired_ops += 1;
      if (opts.record_states) states[m] = 'C';
      if (mac.ops_remaining == 0) {
        current_round[m].end_cycle = cycle;
        trace.rounds[m].push_back(current_round[m]);
        met.completed_layer_tiles += 1;
        if (plan.barrier_policy != BarrierPolicy::FreeRunning) phases.op_done();
        mac.round += 1;
        if (mac.round < rounds) {
          mac.st = MacroSt::WaitRewrite;
          current_round[m] = RoundRecord{};
          current_round[m].ops = plan.per_macro_rounds[mac.round].compute_ops;
        } else {
          mac.st = MacroSt::Finished;
          ++finished;
        }
      }
    }

    trace.granted_bytes.push_back(granted_total);
    if (opts.record_states) trace.macro_states.push_back(states);
    met.total_granted_bytes += static_cast<std::uint64_t>(granted_total);
    met.peak_bandwidth = std::max(met.peak_bandwidth, granted_total);
    ++cycle;
  }

  met.total_cycles = cycle;
  met.throughput = cycle ? static_cast<double>(met.completed_layer_tiles) /
                               static_cast<double>(cycle)
                         : 0.0;

  const SimMetrics steady = measure_steady_state(trace, plan, band);
  met.steady_start = steady.steady_start;
  met.steady_end = steady.steady_end;
  met.steady_is_whole_run = steady.steady_is_whole_run;
  met.macro_utilization = steady.macro_utilization;
  met.bandwidth_utilization = steady.bandwidth_utilization;
  met.bandwidth_idle_fraction = steady.bandwidth_idle_fraction;
  met.steady_ops_per_cycle = steady.steady_ops_per_cycle;
  return result;
}

SimMetrics measure_steady_state(const SimTrace& trace, const SchedulePlan& plan,
                                std::int64_t band) {
  SimMetrics out;
  const std::size_t active = static_cast<std::size_t>(plan.active_macros);
  const std::size_t rounds = plan.per_macro_rounds.size();
  const std::uint64_t total = trace.granted_bytes.size();

  auto whole_run = [&]() {
    out.steady_start = 0;
    out.steady_end = total;
    out.steady_is_whole_run = true;
    std::uint64_t busy = 0, ops = 0;
    for (const auto& per_macro : trace.rounds)
      for (const auto& r : per_macro) {
        busy += r.busy_cycles;
        ops += static_cast<std::uint64_t>(r.ops);
      }
    if (total > 0) {
      out.macro_utilization =
          static_cast<double>(busy) / (static_cast<double>(total) * static_cast<double>(active));
      out.steady_ops_per_cycle = static_cast<double>(ops) / static_cast<double>(total);
      std::uint64_t granted = 0, idle = 0;
      for (std::int64_t g : trace.granted_bytes) {
        granted += static_cast<std::uint64_t>(g);
        if (g == 0) ++idle;
      }
      out.bandwidth_utilization = static_cast<double>(granted) /
                                  (static_cast<double>(band) * static_cast<double>(total));
      out.bandwidth_idle_fraction = static_cast<double>(idle) / static_cast<double>(total);
    }
    return out;
  };

  if (rounds < 3) return whole_run();
  for (const auto& per_macro : trace.rounds)
    if (per_macro.size() != rounds) return whole_run();

  // Window: after every macro completed round one, until the last macro is
  // about to begin its final round.
  std::uint64_t start = 0, end = 0;
  for (const auto& per_macro : trace.rounds) {
    start = std::max(start, per_macro.front().end_cycle + 1);
    end = std::max(end, per_macro[rounds - 2].end_cycle + 1);
  }
  if (end <= start) return whole_run();

  // Per-macro rates over whole rounds inside the window, so that periodic
  // schedules measure exactly regardless of where the window cuts them.
  double util_sum = 0.0;
  double ops_rate = 0.0;
  for (const auto& per_macro : trace.rounds) {
    std::size_t first = rounds, last = rounds;
    for (std::size_t r = 0; r < rounds; ++r) {
      if (per_macro[r].end_cycle >= start) { first = r; break; }
    }
    for (std::size_t r = rounds; r-- > 0;) {
      if (per_macro[r].end_cycle < end) { last = r; break; }
    }
    if (first >= rounds || last >= rounds || last <= first) return whole_run();
    std::uint64_t busy = 0, ops = 0;
    for (std::size_t r = first + 1; r <= last; ++r) {
      busy += per_macro[r].busy_cycles;
      ops += static_cast<std::uint64_t>(per_macro[r].ops);
    }
    const double span =
        static_cast<double>(per_macro[last].end_cycle - per_macro[first].end_cycle);
    util_sum += static_cast<double>(busy) / span;
    ops_rate += static_cast<double>(ops) / span;
  }

  out.steady_start = start;
  out.steady_end = end;
  out.steady_is_whole_run = false;
  out.macro_utilization = util_sum / static_cast<double>(active);
  out.steady_ops_per_cycle = ops_rate;

  std::uint64_t granted = 0, idle = 0;
  for (std::uint64_t c = start; c < end; ++c) {
    const std::int64_t g = trace.granted_bytes[c];
    granted += static_cast<std::uint64_t>(g);
    if (g == 0) ++idle;
  }
  const double window = static_cast<double>(end - start);
  out.bandwidth_utilization =
      static_cast<double>(granted) / (static_cast<double>(band) * window);
  out.bandwidth_idle_fraction = static_cast<double>(idle) / window;
  return out;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  out << "cycle,granted_bytes,macro_states\n";
  for (std::size_t c = 0; c < trace.granted_bytes.size(); ++c) {
    out << c << ',' << trace.granted_bytes[c] << ',';
    if (trace.has_states) out << trace.macro_states[c];
    out << '\n';
  }
}

}  // namespace pim
