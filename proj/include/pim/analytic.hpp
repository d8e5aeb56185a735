#pragma once

#include <cstdint>

#include "pim/config.hpp"
#include "pim/rational.hpp"

namespace pim {

enum class StrategyKind { InSitu, NaivePingPong, GeneralizedPingPong };

const char* strategy_name(StrategyKind s);

// Cycles to push n_in input vectors through a fully loaded macro:
// size_macro * n_in / size_OU.
Rational time_pim(const AcceleratorConfig& cfg, std::int64_t n_in);

// Cycles to rewrite one macro's weights at the given speed: size_macro / speed.
// Throws InvalidParameterError when speed <= 0.
Rational time_rewrite(const AcceleratorConfig& cfg, const Rational& speed);

inline Rational time_rewrite(const AcceleratorConfig& cfg) {
  return time_rewrite(cfg, Rational(cfg.rewrite_speed));
}

// Two-bank alternation keeps a macro busy for t_p + t_r out of every
// 2*max(t_p, t_r) cycles; in (0, 1], equal to 1 iff t_p == t_r.
Rational naive_macro_utilization(const AcceleratorConfig& cfg, std::int64_t n_in);

// Macros sustainable at full off-chip bandwidth usage. n_in only matters for
// the generalized strategy; in-situ gives band/s and naive 2*band/s.
Rational supported_macros(StrategyKind strategy, const AcceleratorConfig& cfg,
                          std::int64_t n_in);

struct StrategyTriple {
  Rational gpp;
  Rational in_situ;
  Rational naive;
};

// Macro count ratio gpp : in-situ : naive = (t_p + t_r)/t_r : 1 : 2.
StrategyTriple macro_count_ratio(const AcceleratorConfig& cfg, std::int64_t n_in);

// Throughput-style ratio at fixed bandwidth (larger is better):
// (n_in*s + size_OU)/size_OU : 1 : 2(n_in*s + size_OU)/(n_in*s + size_OU + |n_in*s - size_OU|).
StrategyTriple exec_time_ratio(const AcceleratorConfig& cfg, std::int64_t n_in);

enum class SpeedClampMode {
  Clamped,   // rewrite speed floors at min_rewrite_speed, active macros shed beyond
  Unclamped, // speed divides without bound
};

// In-situ response to a bandwidth cut band/n: slow every macro's rewrite.
// Unclamped: (t_p + t_r)/(t_p + n*t_r). Clamped: once s/n would drop below
// min_rewrite_speed the speed pins there and active macros are cut to fit,
// multiplying the remaining fraction by s/(min_rewrite_speed * n).
Rational degradation_in_situ(const AcceleratorConfig& cfg, std::int64_t n_in,
                             const Rational& n,
                             SpeedClampMode mode = SpeedClampMode::Clamped);

// Naive response past the balance point: 1/n.
Rational degradation_naive(const Rational& n);

// Generalized ping-pong remaining performance after a bandwidth cut band/n,
// keeping rewrite speed fixed, shedding macros and growing per-macro batches:
// 2(n_in*s + size_OU) / (size_OU + sqrt(size_OU^2 + 4*num_macro*size_OU*n_in*s^2*n/band)).
double degradation_gpp(const AcceleratorConfig& cfg, std::int64_t n_in,
                       std::int64_t num_macro, const Rational& n);

// Positive root of the bandwidth-constraint quadratic
//   n_in*s*m^2 + size_OU*m = n*num_macro*s*size_OU/band,
// i.e. the batch multiple m for which num_macro/m active macros at batch
// m*n_in exactly fit the reduced budget.
double solve_reduction_multiple(const AcceleratorConfig& cfg, std::int64_t n_in,
                                std::int64_t num_macro, const Rational& n);

}  // namespace pim
