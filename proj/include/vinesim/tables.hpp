#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vinesim/csv_io.hpp"
#include "vinesim/experiment.hpp"

namespace vinesim {

/// "HH hrs MM mins", rounded to the nearest minute.
inline std::string format_hours_minutes(double seconds) {
  const long long minutes = std::llround(seconds / 60.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%02lld hrs %02lld mins", minutes / 60, minutes % 60);
  return buf;
}

// Signed whole percent, e.g. "+105%" or "-65%".
inline std::string format_percent(double pct) {
  const long long p = std::llround(pct);
  return (p > 0 ? "+" : "") + std::to_string(p) + "%";
}

struct ReportTable {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ReportTables {
  ReportTable detection;
  ReportTable second_round;
  ReportTable yield_survey;
};

namespace detail {

inline ReportTable phase_table(const ExperimentStats& stats, const std::vector<std::size_t>& spot_counts,
                               const std::vector<std::string>& agents, Phase phase, std::string title) {
  ReportTable t;
  t.title = std::move(title);
  t.header.push_back("Spots");
  for (const auto& a : agents) {
    t.header.push_back(a);
    if (a != kBaselineAgent) t.header.push_back("% Difference");
  }
  for (const auto& a : agents) t.header.push_back(a + "_s");

  for (auto n : spot_counts) {
    std::vector<std::string> row{std::to_string(n)};
    for (const auto& a : agents) {
      const auto& r = stats.at(a, n, phase);
      row.push_back(format_hours_minutes(r.mean));
      if (a != kBaselineAgent)
        row.push_back(r.pct_diff_vs_baseline ? format_percent(*r.pct_diff_vs_baseline) : std::string("n/a"));
    }
    for (const auto& a : agents) row.push_back(format_number(stats.at(a, n, phase).mean));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace detail

/// Detection and second-round tables get one row per spot count; the yield
/// table holds one row when a survey comparison is supplied.
inline ReportTables summarize_to_tables(const ExperimentStats& stats, const std::vector<std::size_t>& spot_counts,
                                        const std::vector<std::string>& agents,
                                        const std::optional<YieldSurveyComparison>& yield = std::nullopt) {
  ReportTables out;
  out.detection = detail::phase_table(stats, spot_counts, agents, Phase::Detection,
                                      "Detection Completion Time by Agent Type");
  out.second_round = detail::phase_table(stats, spot_counts, agents, Phase::Treatment,
                                         "Second-Round Completion Times (Treatment Only)");
  out.yield_survey.title = "Completion Times for Surveying Low-Yield Zones";
  out.yield_survey.header = {"Zones", "full_coverage", "targeted", "% Difference", "full_coverage_s", "targeted_s"};
  if (yield) {
    const auto& y = *yield;
    out.yield_survey.header[1] = y.full_agent;
    out.yield_survey.header[2] = y.targeted_agent;
    out.yield_survey.header[4] = y.full_agent + "_s";
    out.yield_survey.header[5] = y.targeted_agent + "_s";
    out.yield_survey.rows.push_back({std::to_string(y.zone_count), format_hours_minutes(y.full_coverage.total_time),
                                     format_hours_minutes(y.targeted.total_time),
                                     y.full_coverage.total_time > 0.0 ? format_percent(y.pct_diff()) : "n/a",
                                     format_number(y.full_coverage.total_time),
                                     format_number(y.targeted.total_time)});
  }
  return out;
}

/// Tab-separated text block.
inline void write_table_text(std::ostream& out, const ReportTable& t) {
  out << t.title << '\n';
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "\t" : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
    out << '\n';
  }
}

inline void write_table_csv(std::ostream& out, const ReportTable& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace vinesim
