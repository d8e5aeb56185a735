#pragma once

#include <cstdint>
#include <vector>

#include "pim/config.hpp"

namespace pim {

// GeMM problem: (m_rows x k_dim) * (k_dim x n_cols).
struct GemmSpec {
  std::int64_t m_rows = 1;
  std::int64_t k_dim = 1;
  std::int64_t n_cols = 1;
  std::int64_t element_bytes = 1;

  void validate() const {
    if (m_rows <= 0 || k_dim <= 0 || n_cols <= 0 || element_bytes <= 0)
      throw InvalidParameterError("GeMM dimensions must be strictly positive");
  }
};

// One weight tile occupying a full macro, plus how many input vectors stream
// against it per batch and how many batches reuse the loaded tile.
struct LayerTask {
  std::int64_t weight_bytes = 0;  // always a full macro (partial tiles are padded)
  std::int64_t n_in = 1;
  std::int64_t batches = 1;
};

struct WorkloadSpec {
  std::vector<LayerTask> tasks;

  std::size_t layers() const { return tasks.size(); }

  void validate(const AcceleratorConfig& cfg) const {
    if (tasks.empty()) throw InvalidParameterError("workload must contain at least one layer");
    for (const auto& t : tasks) {
      if (t.weight_bytes != cfg.size_macro())
        throw InvalidParameterError("layer weight tile must equal the macro size");
      if (t.n_in < 1 || t.batches < 1)
        throw InvalidParameterError("layer n_in and batches must be >= 1");
    }
  }
};

// Largest per-batch input count whose input and output rows both fit in the
// per-macro buffer; clamped to at least 1. Throws InfeasibleWorkloadError
// when not even a single row pair fits.
std::int64_t derive_batch_size(const AcceleratorConfig& cfg, const GemmSpec& gemm);

// Slices the GeMM weight matrix into full-macro tiles, row-major over
// (k-tile, n-tile); every tile becomes one LayerTask.
WorkloadSpec tile_gemm(const AcceleratorConfig& cfg, const GemmSpec& gemm);

// Benchmark-style stream: `layers` identical tasks with a given batch size.
WorkloadSpec synthetic_workload(const AcceleratorConfig& cfg, std::int64_t layers,
                                std::int64_t n_in);

}  // namespace pim
