#include "pim/analytic.hpp"

#include <cmath>

namespace pim {

const char* strategy_name(StrategyKind s) {
  switch (s) {
    case StrategyKind::InSitu: return "in_situ";
    case StrategyKind::NaivePingPong: return "naive";
    case StrategyKind::GeneralizedPingPong: return "gpp";
  }
  return "?";
}

Rational time_pim(const AcceleratorConfig& cfg, std::int64_t n_in) {
  if (n_in < 0) throw InvalidParameterError("n_in must be non-negative");
  return Rational(cfg.size_macro() * n_in, cfg.size_ou());
}

Rational time_rewrite(const AcceleratorConfig& cfg, const Rational& speed) {
  if (speed <= Rational(0))
    throw InvalidParameterError("rewrite speed must be strictly positive");
  return Rational(cfg.size_macro()) / speed;
}

Rational naive_macro_utilization(const AcceleratorConfig& cfg, std::int64_t n_in) {
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  const Rational larger = tp >= tr ? tp : tr;
  return (tp + tr) / (Rational(2) * larger);
}

Rational supported_macros(StrategyKind strategy, const AcceleratorConfig& cfg,
                          std::int64_t n_in) {
  const Rational band(cfg.offchip_bandwidth);
  const Rational s(cfg.rewrite_speed);
  switch (strategy) {
    case StrategyKind::InSitu:
      return band / s;
    case StrategyKind::NaivePingPong:
      return Rational(2) * band / s;
    case StrategyKind::GeneralizedPingPong: {
      const Rational tp = time_pim(cfg, n_in);
      const Rational tr = time_rewrite(cfg);
      return (tp + tr) * band / (tr * s);
    }
  }
  throw InvalidParameterError("unknown strategy");
}

StrategyTriple macro_count_ratio(const AcceleratorConfig& cfg, std::int64_t n_in) {
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  return {(tp + tr) / tr, Rational(1), Rational(2)};
}

StrategyTriple exec_time_ratio(const AcceleratorConfig& cfg, std::int64_t n_in) {
  const Rational work = Rational(n_in * cfg.rewrite_speed + cfg.size_ou());
  const Rational diff = Rational(n_in * cfg.rewrite_speed - cfg.size_ou());
  const Rational absdiff = diff < Rational(0) ? -diff : diff;
  return {work / Rational(cfg.size_ou()), Rational(1),
          Rational(2) * work / (work + absdiff)};
}

Rational degradation_in_situ(const AcceleratorConfig& cfg, std::int64_t n_in,
                             const Rational& n, SpeedClampMode mode) {
  if (n < Rational(1)) throw InvalidParameterError("n must be >= 1");
  const Rational tp = time_pim(cfg, n_in);
  const Rational tr = time_rewrite(cfg);
  if (mode == SpeedClampMode::Unclamped)
    return (tp + tr) / (tp + n * tr);

  const Rational slowed = Rational(cfg.rewrite_speed) / n;
  if (slowed >= Rational(cfg.min_rewrite_speed))
    return (tp + tr) / (tp + n * tr);

  // Speed pinned at the hardware floor; the residual bandwidth cut is met by
  // shedding active macros, which scales performance linearly.
  const Rational n_at_clamp = Rational(cfg.rewrite_speed, cfg.min_rewrite_speed);
  const Rational perf_at_clamp = (tp + tr) / (tp + n_at_clamp * tr);
  const Rational macro_cut = Rational(cfg.min_rewrite_speed) * n / Rational(cfg.rewrite_speed);
  return perf_at_clamp / macro_cut;
}

Rational degradation_naive(const Rational& n) {
  if (n < Rational(1)) throw InvalidParameterError("n must be >= 1");
  return Rational(1) / n;
}

double degradation_gpp(const AcceleratorConfig& cfg, std::int64_t n_in,
                       std::int64_t num_macro, const Rational& n) {
  if (n < Rational(1)) throw InvalidParameterError("n must be >= 1");
  if (num_macro < 1) throw InvalidParameterError("num_macro must be >= 1");
  const double s = static_cast<double>(cfg.rewrite_speed);
  const double ou = static_cast<double>(cfg.size_ou());
  const double radicand =
      ou * ou + 4.0 * static_cast<double>(num_macro) * ou * static_cast<double>(n_in) *
                    s * s * to_double(n) / static_cast<double>(cfg.offchip_bandwidth);
  return 2.0 * (static_cast<double>(n_in) * s + ou) / (ou + std::sqrt(radicand));
}

double solve_reduction_multiple(const AcceleratorConfig& cfg, std::int64_t n_in,
                                std::int64_t num_macro, const Rational& n) {
  if (n < Rational(1)) throw InvalidParameterError("n must be >= 1");
  const double a = static_cast<double>(n_in * cfg.rewrite_speed);
  const double b = static_cast<double>(cfg.size_ou());
  const double c = to_double(n) * static_cast<double>(num_macro) *
                   static_cast<double>(cfg.rewrite_speed) * static_cast<double>(cfg.size_ou()) /
                   static_cast<double>(cfg.offchip_bandwidth);
  return (-b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
}

}  // namespace pim
