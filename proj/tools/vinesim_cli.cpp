#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vinesim/vinesim.hpp"

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> preset;
  std::optional<std::string> planner;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--preset", flags.preset, "field preset")->check(CLI::IsMember({"52x227", "75x200"}));
  cmd->add_option("--planner", flags.planner, "route planner")->check(CLI::IsMember({"nn", "nn2opt", "exact"}));
}

vinesim::RunConfig resolve(const CommonFlags& flags) {
  vinesim::RunConfig cfg;
  if (flags.config) cfg = vinesim::load_config_file(*flags.config);
  if (flags.preset) cfg.scenario.field = vinesim::field_preset(*flags.preset);
  if (flags.seed) cfg.scenario.master_seed = *flags.seed;
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.planner) cfg.scenario.planner = vinesim::parse_planner(*flags.planner);
  if (flags.threads) cfg.scenario.threads = *flags.threads;
  return cfg;
}

void report(const vinesim::CommandOutput& out, bool quiet) {
  std::cout << out.summary;
  if (quiet) return;
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vineyard scan / treatment / yield-survey simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "do not list written files");

  CommonFlags scan_flags, treat_flags, run_flags, yield_flags;
  std::string scan_agent = "human", treat_agent = "immersive";
  std::size_t scan_spots = 30, treat_spots = 20;
  std::optional<std::string> recorded;
  std::optional<std::size_t> trials;
  std::optional<std::string> yield_map;
  std::optional<double> cell_size, threshold;
  std::string full_agent = "human", targeted_agent = "immersive";

  auto* scan = app.add_subcommand("scan", "one seeded detection scan for one agent");
  add_common(scan, scan_flags);
  scan->add_option("--agent", scan_agent, "agent name");
  scan->add_option("--spots", scan_spots, "number of infected spots");

  auto* treat = app.add_subcommand("treat", "treatment phase for one agent");
  add_common(treat, treat_flags);
  treat->add_option("--agent", treat_agent, "agent name");
  treat->add_option("--spots", treat_spots, "number of infected spots (ignored with --recorded)");
  treat->add_option("--recorded", recorded, "recorded-spots CSV (row,x_m,side,difficulty)")->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "full Monte Carlo experiment");
  add_common(run, run_flags);
  run->add_option("--trials", trials, "trials per scenario");
  run->add_option("--threads", run_flags.threads, "worker threads (0 = all cores)");

  auto* yield = app.add_subcommand("yield-survey", "full-coverage vs targeted survey of low-yield zones");
  add_common(yield, yield_flags);
  yield->add_option("--map", yield_map, "yield grid CSV (default: synthetic 28-zone map)")->check(CLI::ExistingFile);
  yield->add_option("--cell-size", cell_size, "grid cell size in meters");
  yield->add_option("--threshold", threshold, "low-yield threshold (cells <= threshold)");
  yield->add_option("--full-agent", full_agent, "agent doing full coverage");
  yield->add_option("--targeted-agent", targeted_agent, "agent doing the targeted tour");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) {
      report(vinesim::cmd_scan(resolve(scan_flags), scan_agent, scan_spots), quiet);
    } else if (*treat) {
      report(vinesim::cmd_treat(resolve(treat_flags), treat_agent, treat_spots, recorded), quiet);
    } else if (*run) {
      auto cfg = resolve(run_flags);
      if (trials) cfg.scenario.trials = *trials;
      report(vinesim::cmd_run(cfg), quiet);
    } else if (*yield) {
      auto cfg = resolve(yield_flags);
      if (yield_map) cfg.yield_map_path = *yield_map;
      if (cell_size) cfg.yield_cell_size = *cell_size;
      if (threshold) cfg.yield_threshold = *threshold;
      report(vinesim::cmd_yield_survey(cfg, full_agent, targeted_agent), quiet);
    }
  } catch (const vinesim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
