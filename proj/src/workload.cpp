#include "pim/workload.hpp"

namespace pim {

namespace {
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }
}  // namespace

std::int64_t derive_batch_size(const AcceleratorConfig& cfg, const GemmSpec& gemm) {
  gemm.validate();
  const std::int64_t row_pair =
      gemm.k_dim * gemm.element_bytes + gemm.n_cols * gemm.element_bytes;
  if (cfg.buffer_bytes_per_macro < row_pair)
    throw InfeasibleWorkloadError(
        "per-macro buffer too small for one input row plus one output row (" +
        std::to_string(cfg.buffer_bytes_per_macro) + " < " + std::to_string(row_pair) + ")");
  return cfg.buffer_bytes_per_macro / row_pair;
}

WorkloadSpec tile_gemm(const AcceleratorConfig& cfg, const GemmSpec& gemm) {
  const std::int64_t n_in = derive_batch_size(cfg, gemm);
  const std::int64_t k_tiles = ceil_div(gemm.k_dim * gemm.element_bytes, cfg.macro_rows_bytes);
  const std::int64_t n_tiles = ceil_div(gemm.n_cols * gemm.element_bytes, cfg.macro_cols_bytes);
  const std::int64_t batches = ceil_div(gemm.m_rows, n_in);

  WorkloadSpec w;
  w.tasks.reserve(static_cast<std::size_t>(k_tiles * n_tiles));
  for (std::int64_t kt = 0; kt < k_tiles; ++kt)
    for (std::int64_t nt = 0; nt < n_tiles; ++nt)
      w.tasks.push_back({cfg.size_macro(), n_in, batches});
  return w;
}

WorkloadSpec synthetic_workload(const AcceleratorConfig& cfg, std::int64_t layers,
                                std::int64_t n_in) {
  if (layers < 1) throw InvalidParameterError("layers must be >= 1");
  if (n_in < 1) throw InvalidParameterError("n_in must be >= 1");
  WorkloadSpec w;
  w.tasks.assign(static_cast<std::size_t>(layers), LayerTask{cfg.size_macro(), n_in, 1});
  return w;
}

}  // namespace pim
