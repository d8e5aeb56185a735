#include "pim/dse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace pim {
namespace dse {

namespace {

// Largest count <= fractional support that matches the group structure.
std::int64_t fit_macros(StrategyKind strategy, const Rational& supported,
                        std::int64_t group_count) {
  std::int64_t fitted = rat_floor(supported);
  if (strategy == StrategyKind::NaivePingPong) fitted -= fitted % 2;
  if (strategy == StrategyKind::GeneralizedPingPong) fitted -= fitted % group_count;
  return fitted;
}

Rational modeled_period(StrategyKind strategy, const Rational& tp, const Rational& tr) {
  // Cycles per layer-tile per macro: in-situ and gpp run back-to-back
  // rewrite+compute; naive alternates on max(t_p, t_r) phases.
  if (strategy == StrategyKind::NaivePingPong) return Rational(2) * std::max(tp, tr);
  return tp + tr;
}

}  // namespace

ExploreResult explore(const AcceleratorConfig& cfg, const std::vector<Rational>& ratio_sweep,
                      std::int64_t total_work) {
  cfg.validate();
  if (total_work < 1) throw InvalidParameterError("total_work must be >= 1");

  ExploreResult result;
  const Rational tr = time_rewrite(cfg);

  for (const Rational& ratio : ratio_sweep) {
    if (ratio <= Rational(0)) {
      result.skipped.push_back({ratio, "ratio must be positive"});
      continue;
    }
    // t_r : t_p = ratio  =>  n_in = size_OU / (ratio * s)
    const Rational n_in_rat = Rational(cfg.size_ou()) / (ratio * Rational(cfg.rewrite_speed));
    if (!is_integer(n_in_rat) || n_in_rat < Rational(1)) {
      result.skipped.push_back(
          {ratio, "no integer batch size realizes this ratio (n_in = " +
                      to_string(n_in_rat) + ")"});
      continue;
    }
    const std::int64_t n_in = n_in_rat.numerator();
    const Rational tp = time_pim(cfg, n_in);

    for (StrategyKind strategy : {StrategyKind::InSitu, StrategyKind::NaivePingPong,
                                  StrategyKind::GeneralizedPingPong}) {
      const Rational supported = supported_macros(strategy, cfg, n_in);
      std::int64_t group_count = 1;
      if (strategy == StrategyKind::GeneralizedPingPong)
        group_count = std::max<std::int64_t>(1, rat_round_half_down((tp + tr) / tr));
      const std::int64_t fitted = fit_macros(strategy, supported, group_count);
      if (fitted < 1) {
        result.skipped.push_back(
            {ratio, std::string(strategy_name(strategy)) + " supports no macro at this bandwidth"});
        continue;
      }
      DesignPoint p;
      p.strategy = strategy;
      p.ratio = ratio;
      p.n_in = n_in;
      p.num_macros = fitted;
      p.supported_fractional = supported;
      p.exec_time_norm =
          Rational(total_work) * modeled_period(strategy, tp, tr) / Rational(fitted);
      p.rounding_affected =
          supported != Rational(fitted) || !is_integer((tp + tr) / tr);
      result.points.push_back(p);
    }
  }
  return result;
}

ValidationReport validate_point(const DesignPoint& point, const AcceleratorConfig& cfg,
                                std::int64_t total_work) {
  ValidationReport report;
  const Rational tp = time_pim(cfg, point.n_in);
  const Rational tr = time_rewrite(cfg);
  report.modeled_throughput =
      static_cast<double>(point.num_macros) / to_double(modeled_period(point.strategy, tp, tr));
  report.rounding_affected = point.rounding_affected;

  const std::int64_t per_macro = (total_work + point.num_macros - 1) / point.num_macros;
  const std::int64_t layers = std::clamp<std::int64_t>(per_macro, 8, 48);
  const WorkloadSpec workload = synthetic_workload(cfg, layers, point.n_in);
  const SchedulePlan plan = make_plan(point.strategy, cfg, workload, point.num_macros);

  SimOptions opts;
  opts.record_states = false;
  const SimResult sim = run(cfg, workload, plan, opts);
  const double ops_per_tile = static_cast<double>(cfg.ops_per_input() * point.n_in);
  report.simulated_throughput = sim.metrics.steady_ops_per_cycle / ops_per_tile;
  report.simulated_cycles = sim.metrics.total_cycles;
  report.relative_error =
      std::abs(report.simulated_throughput - report.modeled_throughput) /
      report.modeled_throughput;
  report.exceeds_2pct = report.relative_error > 0.02;
  return report;
}

void write_csv(std::ostream& out, const std::vector<DesignPoint>& points) {
  out << "strategy,ratio,n_in,num_macros,exec_time_norm,simulated_cycles,model_error\n";
  for (const auto& p : points) {
    out << strategy_name(p.strategy) << ',' << p.ratio.numerator() << ':'
        << p.ratio.denominator() << ',' << p.n_in << ',' << p.num_macros << ','
        << to_string(p.exec_time_norm) << ',';
    if (p.simulated_cycles) out << *p.simulated_cycles;
    out << ',';
    if (p.model_error) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", *p.model_error);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<Rational> parse_sweep(const std::string& text) {
  std::vector<Rational> ratios;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const Rational from = parse_ratio(text.substr(0, dots));
    const Rational to = parse_ratio(text.substr(dots + 2));
    if (from > to) throw InvalidParameterError("sweep range must be ascending");
    // Enumerate 1:b / a:1 grid points between the endpoints, e.g. 1:8..8:1.
    if (from < Rational(1)) {
      for (std::int64_t b = rat_floor(Rational(1) / from); b >= 2; --b) {
        const Rational r(1, b);
        if (r >= from && r <= to) ratios.push_back(r);
      }
    }
    for (std::int64_t a = 1; a <= std::max<std::int64_t>(1, rat_floor(to)); ++a) {
      const Rational r(a, 1);
      if (r >= from && r <= to) ratios.push_back(r);
    }
    if (ratios.empty()) throw InvalidParameterError("sweep range is empty");
    return ratios;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) ratios.push_back(parse_ratio(part));
  }
  if (ratios.empty()) throw InvalidParameterError("sweep list is empty");
  return ratios;
}

}  // namespace dse
}  // namespace pim
