// Command-line front end: model / simulate / dse / adapt subcommands over a
// sectioned key=value configuration file. Exit codes: 0 success, 1 config
// error, 2 infeasible plan or workload.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "pim/adapt.hpp"
#include "pim/dse.hpp"
#include "pim/run_config.hpp"

namespace {

using namespace pim;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

std::int64_t workload_n_in(const RunConfig& rc) {
  if (rc.synthetic) return rc.n_in;
  return derive_batch_size(rc.accelerator, rc.gemm);
}

int cmd_model(const std::string& config_path, std::int64_t n_in_override,
              const std::string& out_path) {
  const RunConfig rc = parse_config(config_path);
  const AcceleratorConfig& cfg = rc.accelerator;
  const std::int64_t n_in = n_in_override > 0 ? n_in_override : workload_n_in(rc);

  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  const Rational util = naive_macro_utilization(cfg, n_in);
  const StrategyTriple counts = macro_count_ratio(cfg, n_in);
  const StrategyTriple exec = exec_time_ratio(cfg, n_in);

  std::printf("analytic model (n_in = %lld)\n", static_cast<long long>(n_in));
  std::printf("  time_pim            %s cycles\n", to_string(tp).c_str());
  std::printf("  time_rewrite        %s cycles\n", to_string(tr).c_str());
  std::printf("  write:compute       %s\n", to_string(tr / tp).c_str());
  std::printf("  naive macro util    %.6f\n", to_double(util));
  std::printf("  supported macros    in_situ=%s naive=%s gpp=%s\n",
              to_string(supported_macros(StrategyKind::InSitu, cfg, n_in)).c_str(),
              to_string(supported_macros(StrategyKind::NaivePingPong, cfg, n_in)).c_str(),
              to_string(supported_macros(StrategyKind::GeneralizedPingPong, cfg, n_in)).c_str());
  std::printf("  macro count ratio   gpp=%s : in_situ=%s : naive=%s\n",
              to_string(counts.gpp).c_str(), to_string(counts.in_situ).c_str(),
              to_string(counts.naive).c_str());
  // Throughput-style ratio: larger means less time on the same work.
  std::printf("  exec time ratio     gpp=%s : in_situ=%s : naive=%s (throughput-style)\n",
              to_string(exec.gpp).c_str(), to_string(exec.in_situ).c_str(),
              to_string(exec.naive).c_str());

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "quantity,value\n";
    out << "n_in," << n_in << '\n';
    out << "time_pim," << to_string(tp) << '\n';
    out << "time_rewrite," << to_string(tr) << '\n';
    out << "naive_macro_utilization," << to_string(util) << '\n';
    out << "supported_in_situ," << to_string(supported_macros(StrategyKind::InSitu, cfg, n_in))
        << '\n';
    out << "supported_naive,"
        << to_string(supported_macros(StrategyKind::NaivePingPong, cfg, n_in)) << '\n';
    out << "supported_gpp,"
        << to_string(supported_macros(StrategyKind::GeneralizedPingPong, cfg, n_in)) << '\n';
    out << "macro_ratio_gpp," << to_string(counts.gpp) << '\n';
    out << "exec_ratio_gpp," << to_string(exec.gpp) << '\n';
    out << "exec_ratio_naive," << to_string(exec.naive) << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& strategy_override,
                 std::int64_t macros, std::int64_t layers, const std::string& out_path,
                 const std::string& trace_path) {
  RunConfig rc = parse_config(config_path);
  if (!strategy_override.empty()) rc.strategy = parse_strategy(strategy_override);
  if (layers > 0) {
    if (!rc.synthetic) throw ConfigError("--layers applies to synthetic workloads only");
    rc.layers = layers;
  }
  const std::int64_t active =
      macros > 0 ? macros : rc.active_macros.value_or(rc.accelerator.num_macros());

  const WorkloadSpec workload = build_workload(rc);
  const SchedulePlan plan = make_plan(rc.strategy, rc.accelerator, workload, active);
  SimOptions opts;
  opts.record_states = !trace_path.empty();
  const SimResult sim = run(rc.accelerator, workload, plan, opts);
  const SimMetrics& m = sim.metrics;

  std::printf("simulate %s: %lld macros, %zu layers\n", strategy_name(rc.strategy),
              static_cast<long long>(active), workload.layers());
  std::printf("  total cycles        %llu\n", static_cast<unsigned long long>(m.total_cycles));
  std::printf("  steady window       [%llu, %llu)%s\n",
              static_cast<unsigned long long>(m.steady_start),
              static_cast<unsigned long long>(m.steady_end),
              m.steady_is_whole_run ? " (whole run)" : "");
  std::printf("  macro utilization   %.6f\n", m.macro_utilization);
  std::printf("  bandwidth util      %.6f\n", m.bandwidth_utilization);
  std::printf("  bandwidth idle      %.6f\n", m.bandwidth_idle_fraction);
  std::printf("  peak bandwidth      %lld bytes/cycle\n",
              static_cast<long long>(m.peak_bandwidth));
  std::printf("  layer tiles         %llu (%.6f per cycle)\n",
              static_cast<unsigned long long>(m.completed_layer_tiles), m.throughput);

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "total_cycles,steady_start,steady_end,steady_whole_run,macro_utilization,"
           "bandwidth_utilization,bandwidth_idle_fraction,peak_bandwidth,"
           "completed_layer_tiles,throughput,steady_ops_per_cycle,total_granted_bytes,"
           "total_retired_ops\n";
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%llu,%llu,%llu,%d,%.6f,%.6f,%.6f,%lld,%llu,%.8f,%.6f,%llu,%llu\n",
                  static_cast<unsigned long long>(m.total_cycles),
                  static_cast<unsigned long long>(m.steady_start),
                  static_cast<unsigned long long>(m.steady_end),
                  m.steady_is_whole_run ? 1 : 0, m.macro_utilization,
                  m.bandwidth_utilization, m.bandwidth_idle_fraction,
                  static_cast<long long>(m.peak_bandwidth),
                  static_cast<unsigned long long>(m.completed_layer_tiles), m.throughput,
                  m.steady_ops_per_cycle,
                  static_cast<unsigned long long>(m.total_granted_bytes),
                  static_cast<unsigned long long>(m.total_retired_ops));
    out << buf;
  }
  if (!trace_path.empty()) {
    auto out = open_out(trace_path);
    write_trace_csv(out, sim.trace);
  }
  return 0;
}

int cmd_dse(const std::string& config_path, const std::string& sweep, std::int64_t work,
            bool validate, const std::string& out_path) {
  const RunConfig rc = parse_config(config_path);
  const auto ratios = dse::parse_sweep(sweep);
  dse::ExploreResult result = dse::explore(rc.accelerator, ratios, work);

  for (const auto& s : result.skipped)
    std::fprintf(stderr, "skipped ratio %s: %s\n", to_string(s.ratio).c_str(),
                 s.reason.c_str());
  if (validate) {
    for (auto& p : result.points) {
      const auto report = dse::validate_point(p, rc.accelerator, work);
      p.simulated_cycles = report.simulated_cycles;
      p.model_error = report.relative_error;
    }
  }

  std::printf("%-8s %-6s %5s %6s %14s %10s %s\n", "strategy", "ratio", "n_in", "macros",
              "exec_time_norm", "sim_cycles", "model_err");
  for (const auto& p : result.points) {
    const std::string cycles = p.simulated_cycles ? std::to_string(*p.simulated_cycles) : "-";
    const std::string err = p.model_error ? std::to_string(*p.model_error) : "-";
    std::printf("%-8s %2lld:%-3lld %5lld %6lld %14.2f %10s %s\n", strategy_name(p.strategy),
                static_cast<long long>(p.ratio.numerator()),
                static_cast<long long>(p.ratio.denominator()),
                static_cast<long long>(p.n_in), static_cast<long long>(p.num_macros),
                to_double(p.exec_time_norm), cycles.c_str(), err.c_str());
  }

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    dse::write_csv(out, result.points);
  }
  return 0;
}

int cmd_adapt(const std::string& config_path, const std::string& sweep_text,
              std::int64_t macros, std::int64_t n_in_override, bool simulate,
              const std::string& out_path) {
  const RunConfig rc = parse_config(config_path);
  const AcceleratorConfig& cfg = rc.accelerator;
  const std::int64_t num_macro = macros > 0 ? macros : cfg.num_macros();
  const std::int64_t n_in = n_in_override > 0 ? n_in_override : workload_n_in(rc);

  std::vector<Rational> sweep;
  std::stringstream ss(sweep_text);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) sweep.push_back(Rational(std::stoll(part)));
  if (sweep.empty()) throw ConfigError("empty reduction sweep");

  const auto rows = adapt::compare_adaptation(cfg, num_macro, n_in, sweep, simulate);

  std::printf("%4s %8s %8s %8s %8s %9s %9s %9s %s\n", "n", "th_act", "pr_act", "th_m",
              "pr_m", "gpp_th", "gpp_pr", "in_situ", "naive");
  for (const auto& row : rows) {
    std::printf("%4s %8.2f %8lld %8.3f %8.2f %8.2f%% %8.2f%% %8.2f%% %8.2f%%",
                to_string(row.n).c_str(), row.gpp_theory.active_macros,
                static_cast<long long>(row.gpp_practice.active_macros_int),
                row.gpp_theory.batch_multiplier_m, row.gpp_practice.batch_multiplier_m,
                100.0 * row.gpp_theory.remaining_perf,
                100.0 * row.gpp_practice.remaining_perf, 100.0 * row.in_situ.remaining_perf,
                100.0 * row.naive.remaining_perf);
    if (row.gpp_practice_simulated_perf)
      std::printf("  sim=%.2f%%", 100.0 * *row.gpp_practice_simulated_perf);
    std::printf("\n");
  }

  if (!out_path.empty()) {
    auto out = open_out(out_path);
    adapt::write_csv(out, rows, cfg);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concurrent write/compute scheduling toolkit for multi-macro PIM accelerators"};
  app.require_subcommand(1);

  std::string config_path, out_path, trace_path, strategy, sweep;
  std::int64_t n_in = 0, macros = 0, layers = 0, work = 1024;
  bool validate = false, simulate = false;

  auto* model = app.add_subcommand("model", "evaluate the closed-form model");
  model->add_option("--config", config_path)->required();
  model->add_option("--n-in", n_in);
  model->add_option("--out", out_path);

  auto* sim = app.add_subcommand("simulate", "cycle-level simulation of one plan");
  sim->add_option("--config", config_path)->required();
  sim->add_option("--strategy", strategy);
  sim->add_option("--macros", macros);
  sim->add_option("--layers", layers);
  sim->add_option("--out", out_path);
  sim->add_option("--trace", trace_path);

  auto* dse_cmd = app.add_subcommand("dse", "design-space exploration over write:compute ratios");
  dse_cmd->add_option("--config", config_path)->required();
  dse_cmd->add_option("--sweep", sweep)->default_val("1:8..8:1");
  dse_cmd->add_option("--work", work);
  dse_cmd->add_flag("--validate", validate);
  dse_cmd->add_option("--out", out_path);

  auto* adapt_cmd = app.add_subcommand("adapt", "runtime bandwidth-reduction planning");
  adapt_cmd->add_option("--config", config_path)->required();
  adapt_cmd->add_option("--reduction,--sweep", sweep)->default_val("2,4,8,16,32,64");
  adapt_cmd->add_option("--macros", macros);
  adapt_cmd->add_option("--n-in", n_in);
  adapt_cmd->add_flag("--simulate", simulate);
  adapt_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(model)) return cmd_model(config_path, n_in, out_path);
    if (app.got_subcommand(sim))
      return cmd_simulate(config_path, strategy, macros, layers, out_path, trace_path);
    if (app.got_subcommand(dse_cmd)) return cmd_dse(config_path, sweep, work, validate, out_path);
    if (app.got_subcommand(adapt_cmd))
      return cmd_adapt(config_path, sweep, macros, n_in, simulate, out_path);
  } catch (const pim::InfeasiblePlanError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pim::InvalidPlanError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const pim::InfeasibleWorkloadError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
