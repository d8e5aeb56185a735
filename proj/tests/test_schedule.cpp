#include <doctest.h>

#include "pim/schedule.hpp"

using namespace pim;

namespace {
AcceleratorConfig base_config() { return AcceleratorConfig{}; }

WorkloadSpec workload_with_n_in(const AcceleratorConfig& cfg, std::int64_t layers,
                                std::int64_t n_in) {
  return synthetic_workload(cfg, layers, n_in);
}
}  // namespace

TEST_CASE("in-situ plan: one group, zero offsets, global barrier") {
  const auto cfg = base_config();
  const auto plan = plan_in_situ(cfg, workload_with_n_in(cfg, 1, 8), 4);
  CHECK(plan.barrier_policy == BarrierPolicy::GlobalPhaseBarrier);
  REQUIRE(plan.groups.size() == 1);
  CHECK(plan.groups[0].size() == 4);
  CHECK(plan.group_start_offset[0] == 0);
  CHECK(plan.per_macro_rounds.size() == 1);
  CHECK_NOTHROW(plan.validate());

  const auto single = plan_in_situ(cfg, workload_with_n_in(cfg, 1, 8), 1);
  CHECK(single.groups.size() == 1);
  CHECK(single.groups[0].size() == 1);
}

TEST_CASE("naive plan: two equal banks, odd counts rejected") {
  const auto cfg = base_config();
  const auto plan = plan_naive(cfg, workload_with_n_in(cfg, 4, 8), 4);
  CHECK(plan.barrier_policy == BarrierPolicy::BankAlternation);
  REQUIRE(plan.groups.size() == 2);
  CHECK(plan.groups[0].size() == 2);
  CHECK(plan.groups[1].size() == 2);
  CHECK(plan.group_start_offset[0] == 0);
  CHECK(plan.group_start_offset[1] == 256);

  CHECK_THROWS_AS(plan_naive(cfg, workload_with_n_in(cfg, 4, 8), 3), InvalidPlanError);
  CHECK_THROWS_AS(plan_naive(cfg, workload_with_n_in(cfg, 4, 8), 0), InvalidPlanError);
}

TEST_CASE("gpp plan: group count tracks the write:compute ratio") {
  const auto cfg = base_config();

  SUBCASE("1:3 write:compute gives four staggered groups") {
    const auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 4, 24), 4);
    CHECK(plan.barrier_policy == BarrierPolicy::FreeRunning);
    REQUIRE(plan.groups.size() == 4);
    for (const auto& g : plan.groups) CHECK(g.size() == 1);
    CHECK(plan.group_start_offset == std::vector<std::int64_t>{0, 256, 512, 768});
  }

  SUBCASE("balance degenerates to two groups, same shape as naive") {
    const auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 4, 8), 4);
    REQUIRE(plan.groups.size() == 2);
    CHECK(plan.groups[0].size() == 2);
    CHECK(plan.group_start_offset == std::vector<std::int64_t>{0, 256});
  }

  SUBCASE("single macro degenerates to one group at offset zero") {
    const auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 1, 8), 1);
    REQUIRE(plan.groups.size() == 1);
    CHECK(plan.group_start_offset[0] == 0);
  }

  SUBCASE("non-integer ratio rounds half-down and clamps") {
    // t_p/t_r = 1/2 -> (t_p+t_r)/t_r = 1.5 -> one group
    const auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 2, 4), 6);
    CHECK(plan.groups.size() == 1);
    // t_p/t_r = 3.5 -> 4.5 groups -> 4
    const auto plan2 = plan_gpp(cfg, workload_with_n_in(cfg, 2, 28), 8);
    CHECK(plan2.groups.size() == 4);
    // group count never exceeds active
    const auto plan3 = plan_gpp(cfg, workload_with_n_in(cfg, 2, 56), 2);
    CHECK(plan3.groups.size() == 2);
  }

  SUBCASE("remainder macros go to the lowest-indexed groups") {
    const auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 2, 24), 10);  // G=4
    REQUIRE(plan.groups.size() == 4);
    CHECK(plan.groups[0].size() == 3);
    CHECK(plan.groups[1].size() == 3);
    CHECK(plan.groups[2].size() == 2);
    CHECK(plan.groups[3].size() == 2);
    CHECK_NOTHROW(plan.validate());
  }
}

TEST_CASE("plans are deterministic functions of their inputs") {
  const auto cfg = base_config();
  const auto w = workload_with_n_in(cfg, 3, 24);
  const auto a = plan_gpp(cfg, w, 10);
  const auto b = plan_gpp(cfg, w, 10);
  CHECK(a.groups == b.groups);
  CHECK(a.group_start_offset == b.group_start_offset);
}

TEST_CASE("plan validation catches structural damage") {
  const auto cfg = base_config();
  auto plan = plan_gpp(cfg, workload_with_n_in(cfg, 2, 8), 4);
  CHECK_NOTHROW(plan.validate());

  auto broken = plan;
  broken.groups[0].push_back(99);
  CHECK_THROWS_AS(broken.validate(), InvalidPlanError);

  broken = plan;
  broken.groups[1].clear();
  CHECK_THROWS_AS(broken.validate(), InvalidPlanError);

  broken = plan;
  broken.group_start_offset = {256, 0};
  CHECK_THROWS_AS(broken.validate(), InvalidPlanError);

  broken = plan;
  broken.per_macro_rounds.clear();
  CHECK_THROWS_AS(broken.validate(), InvalidPlanError);
}
