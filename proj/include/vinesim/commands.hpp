#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vinesim/config.hpp"
#include "vinesim/csv_io.hpp"
#include "vinesim/experiment.hpp"
#include "vinesim/phase_sim.hpp"
#include "vinesim/random.hpp"
#include "vinesim/svg.hpp"
#include "vinesim/tables.hpp"
#include "vinesim/yield_map.hpp"

namespace vinesim {

namespace fs = std::filesystem;

struct CommandOutput {
  std::vector<fs::path> files;
  std::string summary;
};

namespace detail {

inline std::ofstream open_output(const fs::path& dir, const std::string& name, CommandOutput& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path p = dir / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  out.files.push_back(p);
  return f;
}

inline std::vector<FieldPoint> locations(std::span<const Spot> spots) {
  std::vector<FieldPoint> pts;
  pts.reserve(spots.size());
  for (const auto& s : spots) pts.push_back(s.location);
  return pts;
}

inline std::string describe(const std::string& agent, std::string_view phase, const PhaseResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %.*s: %s (%.1f s; travel %.1f s, service %.1f s, transitions %.1f s)\n",
                agent.c_str(), static_cast<int>(phase.size()), phase.data(), format_hours_minutes(r.total_time).c_str(),
                r.total_time, r.travel_time, r.service_time, r.transition_time);
  return buf;
}

}  // namespace detail

/// Spot set used by the scan and treat commands: the same set trial 0 of a
/// Monte Carlo run with this seed would see.
inline std::vector<Spot> seeded_spots(const RunConfig& cfg, std::size_t n) {
  const auto& sc = cfg.scenario;
  return generate_spots(sc.field, n, sc.p_difficult, trial_seed(sc.master_seed, n, 0));
}

/// One scan for one agent. Writes scan_<agent>.csv (phase summary),
/// scan_<agent>_spots.csv (recorded spots in detection order) and
/// scan_<agent>.svg.
inline CommandOutput cmd_scan(const RunConfig& cfg, const std::string& agent, std::size_t spot_count) {
  const auto& sc = cfg.scenario;
  const AgentProfile& profile = sc.profile(agent);
  const auto spots = seeded_spots(cfg, spot_count);
  const PhaseResult scan = simulate_scan(sc.field, profile, spots);

  CommandOutput out;
  const fs::path dir = cfg.output_dir;
  {
    auto f = detail::open_output(dir, "scan_" + agent + ".csv", out);
    write_phase_csv_header(f);
    write_phase_csv_row(f, agent, "detection", scan);
  }
  {
    auto f = detail::open_output(dir, "scan_" + agent + "_spots.csv", out);
    write_spots_csv(f, scan.visited_spots);
  }
  {
    auto f = detail::open_output(dir, "scan_" + agent + ".svg", out);
    SvgStyle style;
    style.path_label = "Path by " + agent;
    write_path_svg(f, sc.field, scan, detail::locations(spots), "Detection scan: " + agent, style);
  }
  out.summary = detail::describe(agent, "detection", scan);
  return out;
}

/// Phase 2 for one agent. Spots come from `recorded_path` when given,
/// otherwise from a fresh seeded scan. Robots run targeted treatment with
/// the configured planner; memory-less agents rescan the field.
inline CommandOutput cmd_treat(const RunConfig& cfg, const std::string& agent, std::size_t spot_count,
                               const std::optional<std::string>& recorded_path = std::nullopt) {
  const auto& sc = cfg.scenario;
  const AgentProfile& profile = sc.profile(agent);
  const auto spots = recorded_path ? load_spots_file(*recorded_path, sc.field) : seeded_spots(cfg, spot_count);
  const PhaseResult treat = simulate_treatment(sc.field, profile, spots, sc.planner);

  CommandOutput out;
  const fs::path dir = cfg.output_dir;
  {
    auto f = detail::open_output(dir, "treat_" + agent + "_route.csv", out);
    write_route_csv(f, treat);
  }
  {
    auto f = detail::open_output(dir, "treat_" + agent + ".csv", out);
    write_phase_csv_header(f);
    write_phase_csv_row(f, agent, "treatment", treat);
  }
  {
    auto f = detail::open_output(dir, "treat_" + agent + ".svg", out);
    SvgStyle style;
    style.path_label = "Path by " + agent;
    write_path_svg(f, sc.field, treat, detail::locations(spots), "Treatment: " + agent, style);
  }
  out.summary = detail::describe(agent, "treatment", treat);
  return out;
}

/// Deterministic demonstration map covering the field: `zones` isolated
/// low-yield cells (value 1) on a two-cell lattice, every other cell 3.
/// Use threshold 1.
inline YieldMap synthetic_yield_map(const FieldGeometry& field, std::size_t zones = 28, double cell_size = 13.0,
                                    std::uint64_t seed = 2024) {
  YieldMap map;
  map.cell_size = cell_size;
  map.grid_origin = field.origin();
  const double width = (field.num_rows() - 1) * field.row_spacing();
  map.cols = std::max<std::size_t>(1, static_cast<std::size_t>(width / cell_size));
  map.rows = std::max<std::size_t>(1, static_cast<std::size_t>(field.row_length() / cell_size));
  map.values.assign(map.rows * map.cols, 3.0);
  std::vector<std::size_t> lattice;
  for (std::size_t i = 0; i < map.rows; i += 2)
    for (std::size_t j = 0; j < map.cols; j += 2) lattice.push_back(i * map.cols + j);
  if (zones > lattice.size())
    throw DomainError("field too small for " + std::to_string(zones) + " isolated zones");
  Rng rng(seed);
  for (std::size_t k = 0; k < zones; ++k) {  // partial Fisher-Yates
    std::swap(lattice[k], lattice[k + rng.below(lattice.size() - k)]);
    map.values[lattice[k]] = 1.0;
  }
  return map;
}

inline void write_yield_map_csv(std::ostream& out, const YieldMap& map) {
  out << "#cell_size=" << format_number(map.cell_size) << '\n';
  for (std::size_t i = 0; i < map.rows; ++i) {
    for (std::size_t j = 0; j < map.cols; ++j) out << (j ? "," : "") << format_number(map.at(i, j));
    out << '\n';
  }
}

/// Map, threshold and zones used by a yield survey: the configured map when
/// yield.map is set, otherwise the synthetic 28-zone map with threshold 1.
struct YieldInput {
  YieldMap map;
  double threshold = 0.0;
  std::vector<ZoneEpicenter> zones;
  bool synthetic = false;
};

inline YieldInput resolve_yield_input(const RunConfig& cfg) {
  YieldInput in;
  if (cfg.yield_map_path) {
    in.map = load_yield_map_file(*cfg.yield_map_path, cfg.yield_cell_size, cfg.yield_origin);
    if (!cfg.yield_class_values.empty()) in.map = remap_classes(std::move(in.map), cfg.yield_class_values);
    in.threshold = cfg.yield_threshold;
  } else {
    in.map = synthetic_yield_map(cfg.scenario.field);
    in.threshold = 1.0;
    in.synthetic = true;
  }
  in.zones = extract_low_yield_zones(in.map, in.threshold, cfg.scenario.field, cfg.yield_connectivity);
  return in;
}

/// Exhaustive survey by `full_agent` against a targeted survey by
/// `targeted_agent`. Writes yield_comparison.csv, yield_zones.csv,
/// yield_map.csv, yield_full_coverage.svg and yield_targeted.svg.
inline CommandOutput cmd_yield_survey(const RunConfig& cfg, const std::string& full_agent = "human",
                                      const std::string& targeted_agent = "immersive") {
  const auto& sc = cfg.scenario;
  const YieldInput input = resolve_yield_input(cfg);
  const auto cmp = compare_yield_survey(sc.field, sc.profile(full_agent), sc.profile(targeted_agent), input.zones,
                                        sc.planner);
  std::vector<FieldPoint> markers;
  for (const auto& z : input.zones) markers.push_back(z.center);

  CommandOutput out;
  const fs::path dir = cfg.output_dir;
  {
    auto f = detail::open_output(dir, "yield_comparison.csv", out);
    write_yield_comparison_csv(f, cmp);
  }
  {
    auto f = detail::open_output(dir, "yield_zones.csv", out);
    f << "zone_id,row,x_m,cell_count,centroid_x_m,centroid_y_m\n";
    for (const auto& z : input.zones)
      f << z.id << ',' << z.center.row << ',' << format_number(z.center.x) << ',' << z.cell_count << ','
        << format_number(z.centroid.x) << ',' << format_number(z.centroid.y) << '\n';
  }
  {
    auto f = detail::open_output(dir, "yield_map.csv", out);
    write_yield_map_csv(f, input.map);
  }
  SvgStyle style;
  style.marker_label = "Low-Yield Zones";
  {
    auto f = detail::open_output(dir, "yield_full_coverage.svg", out);
    style.path_label = "Path by " + full_agent;
    write_path_svg(f, sc.field, cmp.full_coverage, markers, "Yield survey, full coverage: " + full_agent, style);
  }
  {
    auto f = detail::open_output(dir, "yield_targeted.svg", out);
    style.path_label = "Path by " + targeted_agent;
    write_path_svg(f, sc.field, cmp.targeted, markers, "Yield survey, targeted: " + targeted_agent, style);
  }
  out.summary = std::to_string(cmp.zone_count) + " low-yield zones" + (input.synthetic ? " (synthetic map)" : "") +
                "\n" + detail::describe(full_agent, "full coverage", cmp.full_coverage) +
                detail::describe(targeted_agent, "targeted", cmp.targeted);
  return out;
}

/// Full Monte Carlo run. Writes stats.csv, tables.txt and one CSV per table.
inline CommandOutput cmd_run(const RunConfig& cfg) {
  const auto& sc = cfg.scenario;
  const ExperimentStats stats = run_experiment(sc);

  std::optional<YieldSurveyComparison> yield;
  const bool can_compare = sc.profiles.contains("human") && sc.profiles.contains("immersive");
  if (can_compare) {
    const YieldInput input = resolve_yield_input(cfg);
    yield = compare_yield_survey(sc.field, sc.profile("human"), sc.profile("immersive"), input.zones, sc.planner);
  }
  const ReportTables tables = summarize_to_tables(stats, sc.spot_counts, sc.agents, yield);

  CommandOutput out;
  const fs::path dir = cfg.output_dir;
  {
    auto f = detail::open_output(dir, "stats.csv", out);
    write_stats_csv(f, stats);
  }
  std::ostringstream text;
  for (const auto* t : {&tables.detection, &tables.second_round, &tables.yield_survey}) {
    write_table_text(text, *t);
    text << '\n';
  }
  {
    auto f = detail::open_output(dir, "tables.txt", out);
    f << text.str();
  }
  const std::pair<const char*, const ReportTable*> csvs[] = {{"table_detection.csv", &tables.detection},
                                                             {"table_second_round.csv", &tables.second_round},
                                                             {"table_yield_survey.csv", &tables.yield_survey}};
  for (const auto& [name, table] : csvs) {
    auto f = detail::open_output(dir, name, out);
    write_table_csv(f, *table);
  }
  out.summary = text.str();
  return out;
}

}  // namespace vinesim
