#pragma once

// Run configuration: JSON file -> validated RunConfig.  Schema violations
// (malformed JSON, unknown keys, wrong types, bad ranges) throw ConfigError
// with a message anchored to the offending line of the file.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vortex/solver.hpp"

namespace vortex {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // solve | verify | index | sweep | topology
  SolveConfig solve;
  // When volume is given as vol_over_pi (vol = pi * v), boundary cases of
  // the trichotomy are detected by exact comparison of 4d with tau*v.
  std::optional<double> vol_over_pi;

  // verify
  std::vector<std::string> checks;
  std::map<std::string, double> tolerances;

  // index
  std::vector<int> degrees{0, 1, 2};
  std::vector<int> ns{12};

  // sweep: either a tau continuation schedule or a (d, vol) grid
  std::vector<double> tau_schedule;
  std::vector<int> sweep_degrees;
  std::vector<double> sweep_vols_over_pi;

  // topology
  int k_max = 3;
  std::vector<int> table_degrees{-5, -1, 0, 1, 2, 3};

  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t config_hash = 0;  // FNV-1a of the config file bytes
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

// Parse and validate the config file for the given command.
RunConfig parse_run_config(const std::string& path, const std::string& command);

// As above, from an in-memory string ("path" only labels error messages).
RunConfig parse_run_config_text(const std::string& text, const std::string& command,
                                const std::string& path = "<config>");

}  // namespace vortex
