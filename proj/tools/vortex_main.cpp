// Command-line driver: `vortex <command> --config file.json [--out dir]
// [--jobs k] [--seed u64]`.  All behavior lives in the core library; this
// file only maps flags onto CliOptions and exit codes.

#include <CLI11.hpp>
#include <cstdint>
#include <string>

#include "vortex/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lattice tau-vortex solver and verification suite"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  std::uint64_t seed = 0;

  const char* names[] = {"solve", "verify", "index", "sweep", "topology"};
  const char* descs[] = {
      "solve the vortex equations; writes solve_report.json and fields.csv",
      "run verification checks; writes checks.json",
      "numerical index study over a (d, n) grid; writes index_report.json",
      "tau continuation or (d, vol) classification grid; writes sweep.csv",
      "dump closed-form invariant tables; writes topology.json",
  };
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--jobs", jobs, "parallel workers (overrides config)");
    sub->add_option("--seed", seed, "rng seed (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  vortex::CliOptions opts;
  opts.command = sub->get_name();
  opts.config_path = config_path;
  if (sub->count("--out") > 0) opts.out_dir = out_dir;
  if (sub->count("--jobs") > 0) opts.jobs = jobs;
  if (sub->count("--seed") > 0) opts.seed = seed;
  return vortex::run_command(opts);
}
