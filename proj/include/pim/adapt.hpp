#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pim/simulator.hpp"

namespace pim {
namespace adapt {

// A strategy's best response to the off-chip budget dropping to band/n.
// Theory-mode plans may carry fractional macro counts and irrational batch
// multipliers; integral plans also populate the exact rational fields.
struct AdaptPlan {
  StrategyKind strategy = StrategyKind::GeneralizedPingPong;
  Rational n{1};
  double active_macros = 0.0;
  double batch_multiplier_m = 1.0;
  double ratio = 1.0;  // t_p' : t_r'
  Rational rewrite_speed{1};
  double remaining_perf = 1.0;

  bool exact = false;  // the rational fields below are authoritative
  std::int64_t active_macros_int = 0;  // 0 when the count is fractional
  Rational batch_multiplier_exact{1};
  Rational ratio_exact{1};
  Rational remaining_perf_exact{1};
};

// Continuous solution: m from the bandwidth-constraint quadratic,
// num_macro/m active macros, batches grown m-fold, rewrite speed unchanged.
AdaptPlan plan_gpp_theory(const AcceleratorConfig& cfg, std::int64_t num_macro,
                          std::int64_t n_in, const Rational& n);

// Integer realization: exhaustive search over half-step batch multipliers m
// (n_in*m kept integral) and integral writer cohorts w, with
//   active = w * (m*t_p + t_r)/t_r   (constant writer count in steady state),
//   w * s <= band/n                  (reduced bandwidth),
//   active*m <= num_macro, minus one borrowed buffer held back once m > 1,
// maximizing active * t_p'/(t_p' + t_r); ties break toward fewer macros.
// Throws InfeasiblePlanError when no assignment fits.
AdaptPlan plan_gpp_practice(const AcceleratorConfig& cfg, std::int64_t num_macro,
                            std::int64_t n_in, const Rational& n);

// Slow every macro's rewrite to s/n; once the hardware floor pins the speed,
// shed active macros to fit the budget.
AdaptPlan plan_in_situ(const AcceleratorConfig& cfg, std::int64_t num_macro,
                       std::int64_t n_in, const Rational& n,
                       SpeedClampMode mode = SpeedClampMode::Clamped);

// Slack before balance absorbs the cut losslessly; past t_p = t_r the speed
// holds at the balance point and active macros drop, leaving perf h/n.
AdaptPlan plan_naive(const AcceleratorConfig& cfg, std::int64_t num_macro,
                     std::int64_t n_in, const Rational& n);

struct AdaptComparison {
  Rational n{1};
  AdaptPlan gpp_theory;
  AdaptPlan gpp_practice;
  AdaptPlan in_situ;
  AdaptPlan naive;
  double in_situ_unclamped_perf = 1.0;
  std::optional<double> gpp_practice_simulated_perf;
};

// Side-by-side remaining performance per strategy across a reduction sweep;
// optionally confirms each practice plan against the cycle-level simulator
// (steady-state throughput over the unreduced baseline).
std::vector<AdaptComparison> compare_adaptation(const AcceleratorConfig& cfg,
                                                std::int64_t num_macro, std::int64_t n_in,
                                                const std::vector<Rational>& n_sweep,
                                                bool simulate_practice = false);

// Steady-state throughput of a practice plan relative to the unreduced
// design, measured by simulation.
double simulate_practice_perf(const AcceleratorConfig& cfg, std::int64_t num_macro,
                              std::int64_t n_in, const AdaptPlan& practice,
                              std::int64_t layers = 32);

// `band_label,n,theory_macros,practice_macros,theory_ratio,practice_ratio,theory_perf,practice_perf`
// band_label is the reduced budget band/n.
void write_csv(std::ostream& out, const std::vector<AdaptComparison>& rows,
               const AcceleratorConfig& cfg);

}  // namespace adapt
}  // namespace pim
