#include <doctest.h>

#include "pim/workload.hpp"

using namespace pim;

namespace {
AcceleratorConfig base_config() {
  AcceleratorConfig cfg;
  cfg.buffer_bytes_per_macro = 512;
  return cfg;  // defaults: 32x32 macro, 4x8 OU, s=4, band=128
}
}  // namespace

TEST_CASE("derive_batch_size packs row pairs into the buffer") {
  auto cfg = base_config();
  GemmSpec gemm{8, 32, 32, 1};
  CHECK(derive_batch_size(cfg, gemm) == 8);  // 512 / (32 + 32)

  cfg.buffer_bytes_per_macro = 64;
  CHECK(derive_batch_size(cfg, gemm) == 1);

  cfg.buffer_bytes_per_macro = 63;
  CHECK_THROWS_AS(derive_batch_size(cfg, gemm), InfeasibleWorkloadError);
}

TEST_CASE("tile_gemm emits one task per macro tile") {
  const auto cfg = base_config();

  SUBCASE("single tile fits exactly") {
    GemmSpec gemm{8, 32, 32, 1};
    const WorkloadSpec w = tile_gemm(cfg, gemm);
    REQUIRE(w.layers() == 1);
    CHECK(w.tasks[0].weight_bytes == 1024);
    CHECK(w.tasks[0].n_in == 8);
    CHECK(w.tasks[0].batches == 1);
  }

  SUBCASE("2x2 tiling") {
    GemmSpec gemm{8, 64, 64, 1};
    CHECK(tile_gemm(cfg, gemm).layers() == 4);
  }

  SUBCASE("partial edge tile is padded to a full macro") {
    GemmSpec gemm{8, 33, 32, 1};
    const WorkloadSpec w = tile_gemm(cfg, gemm);
    REQUIRE(w.layers() == 2);
    for (const auto& t : w.tasks) CHECK(t.weight_bytes == cfg.size_macro());
  }

  SUBCASE("batches cover all input rows") {
    GemmSpec gemm{20, 32, 32, 1};  // n_in = 8 -> ceil(20/8) = 3 batches
    CHECK(tile_gemm(cfg, gemm).tasks[0].batches == 3);
  }
}

TEST_CASE("padding only increases total weight bytes") {
  const auto cfg = base_config();
  for (std::int64_t k : {16, 32, 33, 48, 64, 100})
    for (std::int64_t n : {16, 32, 40, 64, 96}) {
      GemmSpec gemm{8, k, n, 1};
      const WorkloadSpec w = tile_gemm(cfg, gemm);
      std::int64_t total = 0;
      for (const auto& t : w.tasks) total += t.weight_bytes;
      CHECK(total >= k * n);
    }
}

TEST_CASE("tiling is deterministic") {
  const auto cfg = base_config();
  GemmSpec gemm{8, 100, 70, 1};
  const WorkloadSpec a = tile_gemm(cfg, gemm);
  const WorkloadSpec b = tile_gemm(cfg, gemm);
  REQUIRE(a.layers() == b.layers());
  for (std::size_t i = 0; i < a.layers(); ++i) {
    CHECK(a.tasks[i].weight_bytes == b.tasks[i].weight_bytes);
    CHECK(a.tasks[i].n_in == b.tasks[i].n_in);
    CHECK(a.tasks[i].batches == b.tasks[i].batches);
  }
}

TEST_CASE("synthetic workloads") {
  const auto cfg = base_config();
  const WorkloadSpec w = synthetic_workload(cfg, 5, 16);
  CHECK(w.layers() == 5);
  for (const auto& t : w.tasks) {
    CHECK(t.n_in == 16);
    CHECK(t.batches == 1);
    CHECK(t.weight_bytes == cfg.size_macro());
  }
  CHECK_THROWS_AS(synthetic_workload(cfg, 0, 8), InvalidParameterError);
  CHECK_THROWS_AS(synthetic_workload(cfg, 4, 0), InvalidParameterError);
}
