#pragma once

// Batch front door behind the command-line binary.
//
// Exit-code contract:
//   0  success, including honest classifications (e.g. "empty")
//   1  config error (schema violation, malformed JSON, bad ranges)
//   2  numerical divergence or internal numerical failure
//   3  verification failure (a check failed, an index mismatched, or a
//      classification came back inconclusive)

#include <cstdint>
#include <optional>
#include <string>

namespace vortex {

struct CliOptions {
  std::string command;
  std::string config_path;
  std::optional<std::string> out_dir;  // --out overrides the config's out_dir
  std::optional<int> jobs;             // --jobs
  std::optional<std::uint64_t> seed;   // --seed
};

int run_command(const CliOptions& opts);

}  // namespace vortex
