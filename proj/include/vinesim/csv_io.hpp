#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vinesim/error.hpp"
#include "vinesim/experiment.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_result.hpp"
#include "vinesim/yield_map.hpp"

namespace vinesim {

// Shortest decimal text that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw DomainError("cannot format number");
  return {buf, ptr};
}

namespace csv {

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(detail::trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Header plus records; blank lines skipped. Every record must have as many
/// fields as the header.
struct Document {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;  // 1-based source line of each record

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InputFormatError("missing column '" + std::string(name) + "'", 1);
  }
};

inline Document read(std::istream& in) {
  Document doc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = split(line);
    if (doc.header.empty()) {
      doc.header = std::move(fields);
      continue;
    }
    if (fields.size() != doc.header.size())
      throw InputFormatError("expected " + std::to_string(doc.header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
    doc.records.push_back(std::move(fields));
    doc.record_lines.push_back(line_no);
  }
  if (doc.header.empty()) throw InputFormatError("empty CSV document");
  return doc;
}

inline double to_double(const std::string& s, std::size_t line, std::size_t col) {
  double v = 0.0;
  if (!detail::parse_double(s, v)) throw InputFormatError("not a number: '" + s + "'", line, col);
  return v;
}

template <typename Int>
Int to_integer(const std::string& s, std::size_t line, std::size_t col) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputFormatError("not an integer: '" + s + "'", line, col);
  return v;
}

}  // namespace csv

// ---- recorded spots: row,x_m,side,difficulty ----

inline void write_spots_csv(std::ostream& out, std::span<const Spot> spots) {
  out << "row,x_m,side,difficulty\n";
  for (const auto& s : spots)
    out << s.location.row << ',' << format_number(s.location.x) << ',' << to_string(s.side) << ','
        << to_string(s.difficulty) << '\n';
}

inline std::vector<Spot> read_spots_csv(std::istream& in) {
  const auto doc = csv::read(in);
  const auto c_row = doc.column("row"), c_x = doc.column("x_m"), c_side = doc.column("side"),
             c_diff = doc.column("difficulty");
  std::vector<Spot> spots;
  for (std::size_t k = 0; k < doc.records.size(); ++k) {
    const auto& rec = doc.records[k];
    const auto line = doc.record_lines[k];
    Spot s;
    s.location.row = csv::to_integer<int>(rec[c_row], line, c_row + 1);
    s.location.x = csv::to_double(rec[c_x], line, c_x + 1);
    try {
      s.side = parse_side(rec[c_side]);
      s.difficulty = parse_difficulty(rec[c_diff]);
    } catch (const InputFormatError& e) {
      throw InputFormatError(e.what(), line);
    }
    spots.push_back(s);
  }
  return spots;
}

/// Reads recorded spots and checks every location against the field.
inline std::vector<Spot> load_spots_file(const std::string& path, const FieldGeometry& field) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("cannot open spots file '" + path + "'");
  auto spots = read_spots_csv(in);
  for (std::size_t k = 0; k < spots.size(); ++k)
    if (!field.contains(spots[k].location))
      throw InputFormatError("spot outside the field", k + 2);
  return spots;
}

// ---- route: leg_index,from_row,from_x_m,to_row,to_x_m,leg_distance_m,cumulative_s ----

inline void write_route_csv(std::ostream& out, const PhaseResult& phase) {
  out << "leg_index,from_row,from_x_m,to_row,to_x_m,leg_distance_m,cumulative_s\n";
  for (std::size_t k = 0; k < phase.stops.size(); ++k) {
    const auto& s = phase.stops[k];
    out << k << ',' << s.from.row << ',' << format_number(s.from.x) << ',' << s.to.row << ','
        << format_number(s.to.x) << ',' << format_number(s.leg_distance) << ','
        << format_number(s.cumulative_time) << '\n';
  }
}

inline std::vector<Stop> read_route_csv(std::istream& in) {
  const auto doc = csv::read(in);
  const std::size_t cols[] = {doc.column("from_row"), doc.column("from_x_m"), doc.column("to_row"),
                              doc.column("to_x_m"), doc.column("leg_distance_m"), doc.column("cumulative_s")};
  std::vector<Stop> stops;
  for (std::size_t k = 0; k < doc.records.size(); ++k) {
    const auto& r = doc.records[k];
    const auto line = doc.record_lines[k];
    Stop s;
    s.from.row = csv::to_integer<int>(r[cols[0]], line, cols[0] + 1);
    s.from.x = csv::to_double(r[cols[1]], line, cols[1] + 1);
    s.to.row = csv::to_integer<int>(r[cols[2]], line, cols[2] + 1);
    s.to.x = csv::to_double(r[cols[3]], line, cols[3] + 1);
    s.leg_distance = csv::to_double(r[cols[4]], line, cols[4] + 1);
    s.cumulative_time = csv::to_double(r[cols[5]], line, cols[5] + 1);
    stops.push_back(s);
  }
  return stops;
}

// ---- phase summary ----

inline void write_phase_csv_header(std::ostream& out) {
  out << "agent,phase,spots,distance_m,transitions,travel_s,service_s,transition_s,total_s\n";
}

inline void write_phase_csv_row(std::ostream& out, std::string_view agent, std::string_view phase,
                                const PhaseResult& r) {
  out << agent << ',' << phase << ',' << r.visited_spots.size() << ',' << format_number(r.distance) << ','
      << r.transitions << ',' << format_number(r.travel_time) << ',' << format_number(r.service_time) << ','
      << format_number(r.transition_time) << ',' << format_number(r.total_time) << '\n';
}

// ---- experiment statistics ----

inline void write_stats_csv(std::ostream& out, const ExperimentStats& stats) {
  out << "agent,scenario_spots,phase,mean_s,std_s,min_s,max_s,pct_diff_vs_human\n";
  for (const auto& r : stats.rows) {
    out << r.agent << ',' << r.spots << ',' << to_string(r.phase) << ',' << format_number(r.mean) << ','
        << format_number(r.std) << ',' << format_number(r.min) << ',' << format_number(r.max) << ',';
    if (r.pct_diff_vs_baseline) out << format_number(*r.pct_diff_vs_baseline);
    out << '\n';
  }
}

/// Inverse of write_stats_csv (per-trial samples are not serialized).
inline ExperimentStats read_stats_csv(std::istream& in) {
  const auto doc = csv::read(in);
  const std::size_t c[] = {doc.column("agent"), doc.column("scenario_spots"), doc.column("phase"),
                           doc.column("mean_s"), doc.column("std_s"), doc.column("min_s"),
                           doc.column("max_s"), doc.column("pct_diff_vs_human")};
  ExperimentStats stats;
  for (std::size_t k = 0; k < doc.records.size(); ++k) {
    const auto& r = doc.records[k];
    const auto line = doc.record_lines[k];
    StatRow row;
    row.agent = r[c[0]];
    row.spots = csv::to_integer<std::size_t>(r[c[1]], line, c[1] + 1);
    try {
      row.phase = parse_phase(r[c[2]]);
    } catch (const InputFormatError& e) {
      throw InputFormatError(e.what(), line, c[2] + 1);
    }
    row.mean = csv::to_double(r[c[3]], line, c[3] + 1);
    row.std = csv::to_double(r[c[4]], line, c[4] + 1);
    row.min = csv::to_double(r[c[5]], line, c[5] + 1);
    row.max = csv::to_double(r[c[6]], line, c[6] + 1);
    if (!r[c[7]].empty()) row.pct_diff_vs_baseline = csv::to_double(r[c[7]], line, c[7] + 1);
    stats.rows.push_back(std::move(row));
  }
  return stats;
}

// ---- yield survey comparison ----

inline void write_yield_comparison_csv(std::ostream& out, const YieldSurveyComparison& c) {
  out << "mode,agent,zone_count,distance_m,transitions,travel_s,service_s,transition_s,total_s,pct_diff_vs_full\n";
  auto row = [&](std::string_view mode, const std::string& agent, const PhaseResult& r, std::string pct) {
    out << mode << ',' << agent << ',' << c.zone_count << ',' << format_number(r.distance) << ','
        << r.transitions << ',' << format_number(r.travel_time) << ',' << format_number(r.service_time) << ','
        << format_number(r.transition_time) << ',' << format_number(r.total_time) << ',' << pct << '\n';
  };
  row("full_coverage", c.full_agent, c.full_coverage, "0");
  row("targeted", c.targeted_agent, c.targeted,
      c.full_coverage.total_time > 0.0 ? format_number(c.pct_diff()) : std::string{});
}

}  // namespace vinesim
