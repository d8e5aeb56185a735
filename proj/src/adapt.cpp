#include "pim/adapt.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace pim {
namespace adapt {

namespace {

void check_args(std::int64_t num_macro, std::int64_t n_in, const Rational& n) {
  if (num_macro < 1) throw InvalidParameterError("num_macro must be >= 1");
  if (n_in < 1) throw InvalidParameterError("n_in must be >= 1");
  if (n < Rational(1)) throw InvalidParameterError("reduction factor n must be >= 1");
}

}  // namespace

AdaptPlan plan_gpp_theory(const AcceleratorConfig& cfg, std::int64_t num_macro,
                          std::int64_t n_in, const Rational& n) {
  check_args(num_macro, n_in, n);
  const double m = solve_reduction_multiple(cfg, n_in, num_macro, n);
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);

  AdaptPlan plan;
  plan.strategy = StrategyKind::GeneralizedPingPong;
  plan.n = n;
  plan.batch_multiplier_m = m;
  plan.active_macros = static_cast<double>(num_macro) / m;
  plan.ratio = m * to_double(tp) / to_double(tr);
  plan.rewrite_speed = Rational(cfg.rewrite_speed);
  plan.remaining_perf = degradation_gpp(cfg, n_in, num_macro, n);
  return plan;
}

AdaptPlan plan_gpp_practice(const AcceleratorConfig& cfg, std::int64_t num_macro,
                            std::int64_t n_in, const Rational& n) {
  check_args(num_macro, n_in, n);
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  const Rational budget = Rational(cfg.offchip_bandwidth) / n;
  const std::int64_t w_band = rat_floor(budget / Rational(cfg.rewrite_speed));
  const Rational baseline = Rational(num_macro) * tp / (tp + tr);

  struct Best {
    Rational objective{0};
    std::int64_t active = 0;
    Rational m{0};
    std::int64_t w = 0;
  } best;
  bool found = false;

  for (std::int64_t half = 2; half <= 2 * num_macro; ++half) {
    const Rational m(half, 2);
    if (!is_integer(m * Rational(n_in))) continue;  // batches stay whole vectors
    const Rational tp_scaled = m * tp;
    const Rational period_ratio = (tp_scaled + tr) / tr;
    const std::int64_t pool = m == Rational(1) ? num_macro : num_macro - 1;
    std::int64_t w = std::min(w_band, rat_floor(Rational(pool) / (period_ratio * m)));
    while (w >= 1 && !is_integer(Rational(w) * period_ratio)) --w;
    if (w < 1) continue;
    const Rational active = Rational(w) * period_ratio;
    const Rational objective = active * tp_scaled / (tp_scaled + tr);
    const std::int64_t active_int = active.numerator();
    if (!found || objective > best.objective ||
        (objective == best.objective &&
         (active_int < best.active || (active_int == best.active && m < best.m)))) {
      best = {objective, active_int, m, w};
      found = true;
    }
  }
  if (!found)
    throw InfeasiblePlanError("no (active, m) assignment fits the reduced bandwidth");

  AdaptPlan plan;
  plan.strategy = StrategyKind::GeneralizedPingPong;
  plan.n = n;
  plan.exact = true;
  plan.active_macros_int = best.active;
  plan.active_macros = static_cast<double>(best.active);
  plan.batch_multiplier_exact = best.m;
  plan.batch_multiplier_m = to_double(best.m);
  plan.ratio_exact = best.m * tp / tr;
  plan.ratio = to_double(plan.ratio_exact);
  plan.rewrite_speed = Rational(cfg.rewrite_speed);
  plan.remaining_perf_exact = best.objective / baseline;
  plan.remaining_perf = to_double(plan.remaining_perf_exact);
  return plan;
}

AdaptPlan plan_in_situ(const AcceleratorConfig& cfg, std::int64_t num_macro,
                       std::int64_t n_in, const Rational& n, SpeedClampMode mode) {
  check_args(num_macro, n_in, n);
  const Rational slowed = Rational(cfg.rewrite_speed) / n;
  const Rational floor_speed(cfg.min_rewrite_speed);
  const bool clamped = mode == SpeedClampMode::Clamped && slowed < floor_speed;

  AdaptPlan plan;
  plan.strategy = StrategyKind::InSitu;
  plan.n = n;
  plan.exact = true;
  plan.rewrite_speed = clamped ? floor_speed : slowed;
  const Rational active =
      clamped ? Rational(num_macro) * Rational(cfg.rewrite_speed) / (floor_speed * n)
              : Rational(num_macro);
  plan.active_macros = to_double(active);
  plan.active_macros_int = is_integer(active) ? active.numerator() : 0;
  plan.batch_multiplier_exact = Rational(1);
  const Rational tp = time_pim(cfg, n_in);
  plan.ratio_exact = tp * plan.rewrite_speed / Rational(cfg.size_macro());
  plan.ratio = to_double(plan.ratio_exact);
  plan.remaining_perf_exact = degradation_in_situ(cfg, n_in, n, mode);
  plan.remaining_perf = to_double(plan.remaining_perf_exact);
  return plan;
}

AdaptPlan plan_naive(const AcceleratorConfig& cfg, std::int64_t num_macro,
                     std::int64_t n_in, const Rational& n) {
  check_args(num_macro, n_in, n);
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  const Rational headroom = std::max(Rational(1), tp / tr);

  AdaptPlan plan;
  plan.strategy = StrategyKind::NaivePingPong;
  plan.n = n;
  plan.exact = true;
  plan.batch_multiplier_exact = Rational(1);
  if (n <= headroom) {
    // Stretching rewrites only eats idle time until t_p = t_r.
    plan.rewrite_speed = Rational(cfg.rewrite_speed) / n;
    plan.active_macros = static_cast<double>(num_macro);
    plan.active_macros_int = num_macro;
    plan.remaining_perf_exact = Rational(1);
  } else {
    plan.rewrite_speed = Rational(cfg.rewrite_speed) / headroom;
    const Rational active = Rational(num_macro) * headroom / n;
    plan.active_macros = to_double(active);
    plan.active_macros_int = is_integer(active) ? active.numerator() : 0;
    plan.remaining_perf_exact = headroom / n;
  }
  plan.ratio_exact = tp * plan.rewrite_speed / Rational(cfg.size_macro());
  plan.ratio = to_double(plan.ratio_exact);
  plan.remaining_perf = to_double(plan.remaining_perf_exact);
  return plan;
}

double simulate_practice_perf(const AcceleratorConfig& cfg, std::int64_t num_macro,
                              std::int64_t n_in, const AdaptPlan& practice,
                              std::int64_t layers) {
  if (!practice.exact || practice.active_macros_int < 1)
    throw InvalidParameterError("simulation needs an integral practice plan");
  const Rational n_in_scaled = practice.batch_multiplier_exact * Rational(n_in);
  if (!is_integer(n_in_scaled))
    throw InvalidParameterError("practice plan batch size is not integral");

  AcceleratorConfig reduced = cfg;
  reduced.offchip_bandwidth = rat_floor(Rational(cfg.offchip_bandwidth) / practice.n);

  SimOptions opts;
  opts.record_states = false;

  const WorkloadSpec reduced_wl = synthetic_workload(reduced, layers, n_in_scaled.numerator());
  const SchedulePlan reduced_plan =
      plan_gpp(reduced, reduced_wl, practice.active_macros_int);
  const SimResult reduced_sim = run(reduced, reduced_wl, reduced_plan, opts);

  const WorkloadSpec base_wl = synthetic_workload(cfg, std::max<std::int64_t>(8, layers / 2), n_in);
  const SchedulePlan base_plan = plan_gpp(cfg, base_wl, num_macro);
  const SimResult base_sim = run(cfg, base_wl, base_plan, opts);

  return reduced_sim.metrics.steady_ops_per_cycle / base_sim.metrics.steady_ops_per_cycle;
}

std::vector<AdaptComparison> compare_adaptation(const AcceleratorConfig& cfg,
                                                std::int64_t num_macro, std::int64_t n_in,
                                                const std::vector<Rational>& n_sweep,
                                                bool simulate_practice) {
  std::vector<AdaptComparison> rows;
  rows.reserve(n_sweep.size());
  for (const Rational& n : n_sweep) {
    AdaptComparison row;
    row.n = n;
    row.gpp_theory = plan_gpp_theory(cfg, num_macro, n_in, n);
    row.gpp_practice = plan_gpp_practice(cfg, num_macro, n_in, n);
    row.in_situ = plan_in_situ(cfg, num_macro, n_in, n, SpeedClampMode::Clamped);
    row.naive = plan_naive(cfg, num_macro, n_in, n);
    row.in_situ_unclamped_perf =
        to_double(degradation_in_situ(cfg, n_in, n, SpeedClampMode::Unclamped));
    if (simulate_practice)
      row.gpp_practice_simulated_perf =
          simulate_practice_perf(cfg, num_macro, n_in, row.gpp_practice);
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<AdaptComparison>& rows,
               const AcceleratorConfig& cfg) {
  out << "band_label,n,theory_macros,practice_macros,theory_ratio,practice_ratio,"
         "theory_perf,practice_perf\n";
  char buf[64];
  for (const auto& row : rows) {
    out << to_string(Rational(cfg.offchip_bandwidth) / row.n) << ',' << to_string(row.n) << ',';
    std::snprintf(buf, sizeof(buf), "%.2f", row.gpp_theory.active_macros);
    out << buf << ',' << row.gpp_practice.active_macros_int << ',';
    std::snprintf(buf, sizeof(buf), "%.4f", row.gpp_theory.ratio);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.4f", row.gpp_practice.ratio);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.4f", row.gpp_theory.remaining_perf);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.4f", row.gpp_practice.remaining_perf);
    out << buf << '\n';
  }
}

}  // namespace adapt
}  // namespace pim
