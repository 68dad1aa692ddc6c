#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "vinesim/agents.hpp"
#include "vinesim/error.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_result.hpp"
#include "vinesim/routing.hpp"
#include "vinesim/yield_map.hpp"

namespace vinesim {

// Every phase starts here.
inline constexpr FieldPoint kDepot{0, 0.0};

namespace detail {

// Spot indices bucketed by row, each bucket in input order.
inline std::vector<std::vector<std::size_t>> spots_by_row(const FieldGeometry& field,
                                                          std::span<const Spot> spots) {
  std::vector<std::vector<std::size_t>> rows(static_cast<std::size_t>(field.num_rows()));
  for (std::size_t i = 0; i < spots.size(); ++i) {
    field.require(spots[i].location);
    rows[static_cast<std::size_t>(spots[i].location.row)].push_back(i);
  }
  return rows;
}

inline void service_pass(std::span<const Spot> spots, std::vector<std::size_t> bucket, bool ascending,
                         const AgentProfile& profile, double& service, std::vector<Spot>& visited) {
  std::stable_sort(bucket.begin(), bucket.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? spots[a].location.x < spots[b].location.x : spots[a].location.x > spots[b].location.x;
  });
  for (auto i : bucket) {
    service += service_time(profile, spots[i].difficulty);
    visited.push_back(spots[i]);
  }
}

/// Exhaustive row coverage from the depot using the profile's scan strategy.
inline PhaseResult cover_field(const FieldGeometry& field, const AgentProfile& profile,
                               std::span<const Spot> spots) {
  const auto rows = spots_by_row(field, spots);
  const int R = field.num_rows();
  const double L = field.row_length();
  PhaseResult r;
  r.visited_spots.reserve(spots.size());
  r.path.push_back(field.to_cartesian(kDepot));
  double service = 0.0;

  if (profile.scan_strategy == ScanStrategy::DoublePass) {
    for (int row = 0; row < R; ++row) {
      std::vector<std::size_t> left, right;
      for (auto i : rows[static_cast<std::size_t>(row)])
        (spots[i].side == Side::Left ? left : right).push_back(i);
      service_pass(spots, std::move(left), true, profile, service, r.visited_spots);
      r.path.push_back(field.to_cartesian({row, L}));
      service_pass(spots, std::move(right), false, profile, service, r.visited_spots);
      r.path.push_back(field.to_cartesian({row, 0.0}));
      if (row + 1 < R) r.path.push_back(field.to_cartesian({row + 1, 0.0}));
    }
    r.distance = 2.0 * R * L;
    r.transitions = static_cast<std::size_t>(2 * R - 1);
  } else {
    for (int row = 0; row < R; ++row) {
      const bool forward = row % 2 == 0;
      service_pass(spots, rows[static_cast<std::size_t>(row)], forward, profile, service, r.visited_spots);
      const double end = forward ? L : 0.0;
      r.path.push_back(field.to_cartesian({row, end}));
      if (row + 1 < R) r.path.push_back(field.to_cartesian({row + 1, end}));
    }
    r.distance = static_cast<double>(R) * L;
    r.transitions = static_cast<std::size_t>(R - 1);
  }

  // Stops: progress along the traversal and transitions made before each spot.
  const bool twice = profile.scan_strategy == ScanStrategy::DoublePass;
  FieldPoint prev = kDepot;
  double prev_pos = 0.0;
  double served = 0.0;
  r.stops.reserve(r.visited_spots.size());
  for (const auto& s : r.visited_spots) {
    const int row = s.location.row;
    double pos = 0.0;
    std::size_t trans = 0;
    if (twice) {
      const bool out = s.side == Side::Left;
      pos = 2.0 * L * row + (out ? s.location.x : 2.0 * L - s.location.x);
      trans = static_cast<std::size_t>(2 * row + (out ? 0 : 1));
    } else {
      pos = L * row + (row % 2 == 0 ? s.location.x : L - s.location.x);
      trans = static_cast<std::size_t>(row);
    }
    served += service_time(profile, s.difficulty);
    r.stops.push_back({prev, s.location, pos - prev_pos,
                       pos / profile.speed + static_cast<double>(trans) * profile.row_transition_time + served});
    prev = s.location;
    prev_pos = pos;
  }

  r.travel_time = r.distance / profile.speed;
  r.service_time = service;
  r.transition_time = static_cast<double>(r.transitions) * profile.row_transition_time;
  r.finalize();
  return r;
}

inline PhaseResult targeted_tour(const FieldGeometry& field, const AgentProfile& profile,
                                 std::span<const Spot> spots, Planner planner) {
  if (spots.empty()) return PhaseResult{};
  ServiceTable service;
  for (const auto& s : spots) {
    field.require(s.location);
    service[s.location].push_back(s.difficulty);
  }
  std::vector<FieldPoint> targets;
  targets.reserve(service.size());
  for (const auto& [p, _] : service) targets.push_back(p);

  const Route route = plan_route(planner, field, kDepot, targets);
  PhaseResult r = route_time(field, profile, route, service);

  // Co-located spots are reported in input order at their shared stop.
  for (const auto& v : route.visits)
    for (const auto& s : spots)
      if (s.location == v) r.visited_spots.push_back(s);
  return r;
}

}  // namespace detail

/// Phase 1: serpentine scan (single pass per row) or out-and-back scan
/// (DoublePass). Detection is perfect, so every spot is visited once.
inline PhaseResult simulate_scan(const FieldGeometry& field, const AgentProfile& profile,
                                 std::span<const Spot> spots) {
  PhaseResult r = detail::cover_field(field, profile, spots);
  r.provides_coordinates = profile.has_memory;
  return r;
}

/// Phase 2 for agents without memory: the whole scan traversal is repeated
/// and spots are sprayed as they are passed.
inline PhaseResult simulate_treatment_full_rescan(const FieldGeometry& field, const AgentProfile& profile,
                                                  std::span<const Spot> spots) {
  if (profile.has_memory)
    throw MisuseError("agent '" + profile.name + "' records coordinates; use targeted treatment");
  return detail::cover_field(field, profile, spots);
}

/// Phase 2 for agents with memory: open tour from the depot over the
/// recorded spot locations. Nothing recorded means nothing to do (0 s).
inline PhaseResult simulate_treatment_targeted(const FieldGeometry& field, const AgentProfile& profile,
                                               std::span<const Spot> recorded,
                                               Planner planner = Planner::NearestNeighbor2Opt) {
  if (!profile.has_memory)
    throw MisuseError("agent '" + profile.name + "' keeps no spot coordinates; use a full rescan");
  return detail::targeted_tour(field, profile, recorded, planner);
}

/// Phase 2 dispatch by agent capability.
inline PhaseResult simulate_treatment(const FieldGeometry& field, const AgentProfile& profile,
                                      std::span<const Spot> spots, Planner planner) {
  return profile.has_memory ? simulate_treatment_targeted(field, profile, spots, planner)
                            : simulate_treatment_full_rescan(field, profile, spots);
}

enum class SurveyMode { FullCoverage, Targeted };

/// Zone epicenters as Easy spots, so each zone costs the profile's Easy time.
inline std::vector<Spot> zones_as_spots(std::span<const ZoneEpicenter> zones) {
  std::vector<Spot> spots;
  spots.reserve(zones.size());
  for (const auto& z : zones) spots.push_back({z.center, Side::Left, Difficulty::Easy});
  return spots;
}

inline PhaseResult simulate_yield_survey(const FieldGeometry& field, const AgentProfile& profile,
                                         std::span<const ZoneEpicenter> zones, SurveyMode mode,
                                         Planner planner = Planner::NearestNeighbor2Opt) {
  const auto spots = zones_as_spots(zones);
  if (mode == SurveyMode::FullCoverage) return detail::cover_field(field, profile, spots);
  return detail::targeted_tour(field, profile, spots, planner);
}

}  // namespace vinesim
