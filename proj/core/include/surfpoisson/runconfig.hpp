#pragma once

#include <cstdint>
#include <string>

#include "surfpoisson/solver.hpp"

namespace surfpoisson {

/// Parsed run configuration. See README for the JSON schema; unknown keys are
/// rejected with ConfigError.
struct RunConfig {
  Chart chart;
  double mesh_h = 0.1;
  int levels = 4;
  int quad_order = 4;
  SolverOptions solver;
  std::string f_id = "zero";
  std::string chi_id = "zero";
  std::string manufactured_id = "disk_cos_pi_r2";
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::string config_hash;  // FNV-1a of the config file bytes
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace surfpoisson
