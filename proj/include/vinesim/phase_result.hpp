#pragma once

#include <cstddef>
#include <vector>

#include "vinesim/field.hpp"

namespace vinesim {

/// One service stop in visit order: where the agent came from, how far it
/// moved, and the elapsed phase time once service there is finished.
struct Stop {
  FieldPoint from;
  FieldPoint to;
  double leg_distance = 0.0;
  double cumulative_time = 0.0;
};

/// Time accounting and geometry for one simulated phase.
struct PhaseResult {
  double travel_time = 0.0;
  double service_time = 0.0;
  double transition_time = 0.0;
  double total_time = 0.0;

  double distance = 0.0;          // meters driven or walked
  std::size_t transitions = 0;    // row-entry events charged
  std::vector<Point2> path;       // Cartesian polyline
  std::vector<Spot> visited_spots;
  std::vector<Stop> stops;  // one per service stop, in visit order
  bool provides_coordinates = false;  // spot coordinates recorded for a later phase

  // total_time is always this exact sum; callers compare against it bitwise.
  static double sum(double travel, double service, double transition) noexcept {
    return travel + service + transition;
  }

  void finalize() noexcept { total_time = sum(travel_time, service_time, transition_time); }
};

}  // namespace vinesim
