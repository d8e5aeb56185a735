#pragma once

#include <cstdint>

#include "pim/errors.hpp"
#include "pim/rational.hpp"

namespace pim {

// Hardware parameters of a multi-macro PIM GeMM accelerator. A macro is one
// PIM subarray that alternates between a weight-write mode and a compute
// mode; the operation unit (OU) is the sub-tile activated per compute cycle.
struct AcceleratorConfig {
  std::int64_t num_cores = 16;
  std::int64_t macros_per_core = 16;
  std::int64_t macro_rows_bytes = 32;
  std::int64_t macro_cols_bytes = 32;
  std::int64_t ou_rows_bytes = 4;
  std::int64_t ou_cols_bytes = 8;
  std::int64_t rewrite_speed = 4;       // bytes/cycle per macro
  std::int64_t min_rewrite_speed = 1;   // hardware floor for slowed rewrites
  std::int64_t offchip_bandwidth = 128; // bytes/cycle, shared by all macros
  std::int64_t buffer_bytes_per_macro = 512;

  std::int64_t size_macro() const { return macro_rows_bytes * macro_cols_bytes; }
  std::int64_t size_ou() const { return ou_rows_bytes * ou_cols_bytes; }
  std::int64_t num_macros() const { return num_cores * macros_per_core; }

  // OU steps needed to sweep the whole macro for one input vector.
  std::int64_t ops_per_input() const {
    return (macro_rows_bytes / ou_rows_bytes) * (macro_cols_bytes / ou_cols_bytes);
  }

  void validate() const {
    auto positive = [](std::int64_t v, const char* name) {
      if (v <= 0) throw ConfigError(std::string(name) + " must be strictly positive");
    };
    positive(num_cores, "num_cores");
    positive(macros_per_core, "macros_per_core");
    positive(macro_rows_bytes, "macro_rows_bytes");
    positive(macro_cols_bytes, "macro_cols_bytes");
    positive(ou_rows_bytes, "ou_rows_bytes");
    positive(ou_cols_bytes, "ou_cols_bytes");
    positive(rewrite_speed, "rewrite_speed");
    positive(min_rewrite_speed, "min_rewrite_speed");
    positive(offchip_bandwidth, "offchip_bandwidth");
    positive(buffer_bytes_per_macro, "buffer_bytes_per_macro");
    if (ou_rows_bytes > macro_rows_bytes || ou_cols_bytes > macro_cols_bytes)
      throw ConfigError("operation unit must fit inside the macro");
    if (macro_rows_bytes % ou_rows_bytes != 0 || macro_cols_bytes % ou_cols_bytes != 0)
      throw ConfigError("macro dimensions must be integer multiples of the OU dimensions");
    if (min_rewrite_speed > rewrite_speed)
      throw ConfigError("min_rewrite_speed must not exceed rewrite_speed");
    if (rewrite_speed > offchip_bandwidth)
      throw ConfigError("rewrite_speed must not exceed offchip_bandwidth");
  }
};

// Runtime bandwidth-reduction query: the off-chip budget drops to band/n and
// the planner responds with a macro/batch reduction multiple m >= 1.
struct AdaptationQuery {
  Rational n{1};
  Rational m{1};

  void validate() const {
    if (n < Rational(1)) throw InvalidParameterError("bandwidth reduction factor n must be >= 1");
    if (m < Rational(1)) throw InvalidParameterError("reduction multiple m must be >= 1");
  }
};

}  // namespace pim
