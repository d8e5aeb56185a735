#include "pim/run_config.hpp"

#include <fstream>
#include <map>

namespace pim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a decimal integer, got '" + value + "'");
  }
}

}  // namespace

StrategyKind parse_strategy(const std::string& name) {
  if (name == "in_situ" || name == "insitu" || name == "in-situ") return StrategyKind::InSitu;
  if (name == "naive") return StrategyKind::NaivePingPong;
  if (name == "gpp" || name == "generalized") return StrategyKind::GeneralizedPingPong;
  throw ConfigError("strategy.kind: expected in_situ, naive or gpp, got '" + name + "'");
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  RunConfig rc;
  bool saw_gemm_key = false, saw_synthetic_key = false;
  std::string section, line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "accelerator" && section != "workload" && section != "strategy")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (section == "accelerator") {
      AcceleratorConfig& a = rc.accelerator;
      static const std::map<std::string, std::int64_t AcceleratorConfig::*> fields = {
          {"num_cores", &AcceleratorConfig::num_cores},
          {"macros_per_core", &AcceleratorConfig::macros_per_core},
          {"macro_rows_bytes", &AcceleratorConfig::macro_rows_bytes},
          {"macro_cols_bytes", &AcceleratorConfig::macro_cols_bytes},
          {"ou_rows_bytes", &AcceleratorConfig::ou_rows_bytes},
          {"ou_cols_bytes", &AcceleratorConfig::ou_cols_bytes},
          {"rewrite_speed", &AcceleratorConfig::rewrite_speed},
          {"min_rewrite_speed", &AcceleratorConfig::min_rewrite_speed},
          {"offchip_bandwidth", &AcceleratorConfig::offchip_bandwidth},
          {"buffer_bytes_per_macro", &AcceleratorConfig::buffer_bytes_per_macro},
      };
      const auto it = fields.find(key);
      if (it == fields.end()) throw ConfigError("unknown key " + qual);
      a.*(it->second) = parse_int(qual, value);
    } else if (section == "workload") {
      if (key == "layers") {
        rc.layers = parse_int(qual, value);
        saw_synthetic_key = true;
      } else if (key == "n_in") {
        rc.n_in = parse_int(qual, value);
        saw_synthetic_key = true;
      } else if (key == "m_rows") {
        rc.gemm.m_rows = parse_int(qual, value);
        saw_gemm_key = true;
      } else if (key == "k_dim") {
        rc.gemm.k_dim = parse_int(qual, value);
        saw_gemm_key = true;
      } else if (key == "n_cols") {
        rc.gemm.n_cols = parse_int(qual, value);
        saw_gemm_key = true;
      } else if (key == "element_bytes") {
        rc.gemm.element_bytes = parse_int(qual, value);
        saw_gemm_key = true;
      } else {
        throw ConfigError("unknown key " + qual);
      }
    } else if (section == "strategy") {
      if (key == "kind") {
        rc.strategy = parse_strategy(value);
      } else if (key == "active") {
        rc.active_macros = parse_int(qual, value);
      } else {
        throw ConfigError("unknown key " + qual);
      }
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    }
  }

  if (saw_gemm_key && saw_synthetic_key)
    throw ConfigError("[workload] mixes synthetic (layers/n_in) and gemm keys");
  rc.synthetic = !saw_gemm_key;

  try {
    rc.accelerator.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("accelerator.") + e.what());
  }
  if (rc.synthetic) {
    if (rc.layers < 1) throw ConfigError("workload.layers must be >= 1");
    if (rc.n_in < 1) throw ConfigError("workload.n_in must be >= 1");
  } else {
    try {
      rc.gemm.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("workload: ") + e.what());
    }
  }
  if (rc.active_macros && *rc.active_macros < 1)
    throw ConfigError("strategy.active must be >= 1");
  return rc;
}

WorkloadSpec build_workload(const RunConfig& rc) {
  if (rc.synthetic) return synthetic_workload(rc.accelerator, rc.layers, rc.n_in);
  return tile_gemm(rc.accelerator, rc.gemm);
}

}  // namespace pim
