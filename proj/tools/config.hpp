#pragma once

#include <stdexcept>
#include <string>

#include "logsp/grid.hpp"
#include "logsp/potential.hpp"
#include "logsp/solver.hpp"

namespace logsp::cli {

// Raised for malformed or out-of-range configuration; the message names the
// offending key. Maps to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double grid_L = 12.0;
  int grid_n = 256;
  ProblemParams problem{4.0, 1.0};
  std::string potential_name = "well1";
  double potential_c = 1.0;  // for "constant"
  SolveConfig solver;
  std::string output_directory = "out";
  bool write_csv = true;
  bool write_field = true;
};

// Strict parse: unknown keys anywhere are rejected.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Effective configuration echo; parse(serialize(c)) reproduces c.
std::string serialize_config(const RunConfig& c);

GridSpec grid_of(const RunConfig& c);
PotentialModel potential_of(const RunConfig& c);

}  // namespace logsp::cli
