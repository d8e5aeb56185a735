#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pim/run_config.hpp"

using namespace pim;
namespace fs = std::filesystem;

namespace {

const char* kReferenceConfig =
    "# reference accelerator\n"
    "[accelerator]\n"
    "num_cores = 16\n"
    "macros_per_core = 16\n"
    "macro_rows_bytes = 32\n"
    "macro_cols_bytes = 32\n"
    "ou_rows_bytes = 4\n"
    "ou_cols_bytes = 8\n"
    "rewrite_speed = 4\n"
    "min_rewrite_speed = 1\n"
    "offchip_bandwidth = 128\n"
    "buffer_bytes_per_macro = 512\n"
    "\n"
    "[workload]\n"
    "layers = 8\n"
    "n_in = 8\n"
    "\n"
    "[strategy]\n"
    "kind = gpp\n"
    "active = 16\n";

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "pimsched_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const auto path = temp_dir() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(PIMSCHED_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_config accepts the reference accelerator") {
  const auto path = write_config("ref.cfg", kReferenceConfig);
  const RunConfig rc = parse_config(path.string());
  CHECK(rc.accelerator.num_macros() == 256);
  CHECK(rc.accelerator.size_macro() == 1024);
  CHECK(rc.accelerator.size_ou() == 32);
  CHECK(rc.synthetic);
  CHECK(rc.layers == 8);
  CHECK(rc.strategy == StrategyKind::GeneralizedPingPong);
  CHECK(rc.active_macros == 16);
}

TEST_CASE("parse_config rejects invariant violations with field messages") {
  SUBCASE("OU rows must divide macro rows") {
    std::string bad = kReferenceConfig;
    bad.replace(bad.find("ou_rows_bytes = 4"), 17, "ou_rows_bytes = 5");
    const auto path = write_config("bad_ou.cfg", bad);
    CHECK_THROWS_AS(parse_config(path.string()), ConfigError);
  }
  SUBCASE("rewrite speed must be positive") {
    std::string bad = kReferenceConfig;
    bad.replace(bad.find("rewrite_speed = 4"), 17, "rewrite_speed = 0");
    const auto path = write_config("bad_speed.cfg", bad);
    CHECK_THROWS_AS(parse_config(path.string()), ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_config("/nonexistent/nowhere.cfg"), ConfigError);
  }
  SUBCASE("unknown keys are rejected") {
    const auto path = write_config("unknown.cfg",
                                   std::string(kReferenceConfig) + "[accelerator]\nbogus = 1\n");
    CHECK_THROWS_AS(parse_config(path.string()), ConfigError);
  }
}

TEST_CASE("gemm workloads come from the [workload] section") {
  std::string gemm = kReferenceConfig;
  gemm.replace(gemm.find("layers = 8\nn_in = 8"), 18, "k_dim = 64\nn_cols = 64\nm_rows = 8");
  const auto path = write_config("gemm.cfg", gemm);
  const RunConfig rc = parse_config(path.string());
  CHECK_FALSE(rc.synthetic);
  CHECK(build_workload(rc).layers() == 4);
}

TEST_CASE("cli: exit codes") {
  const auto ref = write_config("ref.cfg", kReferenceConfig);
  CHECK(run_tool("model --config " + ref.string()) == 0);
  CHECK(run_tool("simulate --config " + ref.string() + " --strategy gpp") == 0);
  CHECK(run_tool("model --config /nonexistent.cfg") == 1);

  std::string bad = kReferenceConfig;
  bad.replace(bad.find("ou_rows_bytes = 4"), 17, "ou_rows_bytes = 5");
  const auto bad_path = write_config("bad.cfg", bad);
  CHECK(run_tool("model --config " + bad_path.string()) == 1);

  // Odd macro count for naive ping-pong is an infeasible plan.
  CHECK(run_tool("simulate --config " + ref.string() + " --strategy naive --macros 3") == 2);

  // A reduction no writer can fit is an infeasible plan.
  CHECK(run_tool("adapt --config " + ref.string() + " --reduction 100000") == 2);
}

TEST_CASE("cli: simulate writes metrics and trace files deterministically") {
  const auto ref = write_config("ref.cfg", kReferenceConfig);
  const auto dir = temp_dir();
  const auto m1 = dir / "m1.csv", m2 = dir / "m2.csv";
  const auto t1 = dir / "t1.csv", t2 = dir / "t2.csv";
  const std::string base = "simulate --config " + ref.string() + " --strategy gpp --macros 8";
  REQUIRE(run_tool(base + " --out " + m1.string() + " --trace " + t1.string()) == 0);
  REQUIRE(run_tool(base + " --out " + m2.string() + " --trace " + t2.string()) == 0);
  CHECK(slurp(m1) == slurp(m2));
  CHECK(slurp(t1) == slurp(t2));
  CHECK(slurp(t1).substr(0, 32) == "cycle,granted_bytes,macro_states");
}

TEST_CASE("cli: dse and adapt emit their CSV schemas") {
  const auto ref = write_config("ref.cfg", kReferenceConfig);
  const auto dir = temp_dir();
  const auto dse_csv = dir / "dse.csv";
  REQUIRE(run_tool("dse --config " + ref.string() + " --sweep 1:8..8:1 --out " +
                   dse_csv.string()) == 0);
  const std::string dse_text = slurp(dse_csv);
  CHECK(dse_text.find("strategy,ratio,n_in,num_macros,exec_time_norm") == 0);
  CHECK(dse_text.find("gpp,1:1,8,64,") != std::string::npos);

  const auto adapt_csv = dir / "adapt.csv";
  REQUIRE(run_tool("adapt --config " + ref.string() + " --macros 128 --n-in 8 --sweep 2,4 --out " +
                   adapt_csv.string()) == 0);
  const std::string adapt_text = slurp(adapt_csv);
  CHECK(adapt_text.find("band_label,n,theory_macros,practice_macros") == 0);
}
