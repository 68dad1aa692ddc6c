#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vinesim/agents.hpp"
#include "vinesim/error.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_result.hpp"

namespace vinesim {

/// Open tour from a fixed start through every target, no return leg.
struct Route {
  FieldPoint start;
  std::vector<FieldPoint> visits;
  std::vector<double> leg_distances;
  double total_distance = 0.0;
};

enum class Planner { NearestNeighbor, NearestNeighbor2Opt, Exact };

inline constexpr std::size_t kExactPlannerLimit = 10;

// Improvement threshold for 2-opt moves, in meters.
inline constexpr double kTwoOptEpsilon = 1e-9;

namespace detail {

inline double row_distance_unchecked(const FieldGeometry& field, const FieldPoint& a,
                                     const FieldPoint& b) noexcept {
  if (a.row == b.row) return std::abs(a.x - b.x);
  const double across = std::abs(a.row - b.row) * field.row_spacing();
  // Operand order is fixed so that d(a, b) and d(b, a) round identically.
  const double via_near = (a.x + b.x) + across;
  const double far = field.row_length();
  const double via_far = ((far - a.x) + (far - b.x)) + across;
  return std::min(via_near, via_far);
}

}  // namespace detail

/// Shortest travel distance when movement is confined to rows and the two
/// headlands. Symmetric; same-row distance is |a.x - b.x|.
inline double row_distance(const FieldGeometry& field, const FieldPoint& a, const FieldPoint& b) {
  field.require(a);
  field.require(b);
  return detail::row_distance_unchecked(field, a, b);
}

/// Distance matrix over [start, targets...]; index 0 is the start.
class DistanceTable {
 public:
  DistanceTable(const FieldGeometry& field, const FieldPoint& start, std::span<const FieldPoint> targets)
      : n_(targets.size() + 1), d_(n_ * n_, 0.0) {
    points_.reserve(n_);
    points_.push_back(start);
    points_.insert(points_.end(), targets.begin(), targets.end());
    for (const auto& p : points_) field.require(p);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        d_[i * n_ + j] = d_[j * n_ + i] = detail::row_distance_unchecked(field, points_[i], points_[j]);
  }

  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  std::size_t size() const noexcept { return n_; }
  const FieldPoint& point(std::size_t i) const noexcept { return points_[i]; }

 private:
  std::size_t n_;
  std::vector<double> d_;
  std::vector<FieldPoint> points_;
};

/// Fills leg_distances and total_distance (left-to-right summation).
inline Route make_route(const FieldGeometry& field, const FieldPoint& start, std::vector<FieldPoint> visits) {
  Route r{start, std::move(visits), {}, 0.0};
  r.leg_distances.reserve(r.visits.size());
  FieldPoint at = start;
  for (const auto& v : r.visits) {
    r.leg_distances.push_back(row_distance(field, at, v));
    at = v;
  }
  r.total_distance = std::accumulate(r.leg_distances.begin(), r.leg_distances.end(), 0.0);
  return r;
}

namespace detail {

inline void require_distinct(std::span<const FieldPoint> targets) {
  std::vector<FieldPoint> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("route targets must be distinct");
}

}  // namespace detail

/// Greedy open tour: always move to the nearest unvisited target; equal
/// distances go to the smaller (row, x).
inline Route plan_route_nearest_neighbor(const FieldGeometry& field, const FieldPoint& start,
                                         std::span<const FieldPoint> targets) {
  detail::require_distinct(targets);
  const DistanceTable dist(field, start, targets);
  const std::size_t n = targets.size();
  std::vector<bool> used(n + 1, false);
  std::vector<FieldPoint> order;
  order.reserve(n);
  std::size_t at = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (used[k]) continue;
      if (best == 0 || dist(at, k) < dist(at, best) ||
          (dist(at, k) == dist(at, best) && dist.point(k) < dist.point(best)))
        best = k;
    }
    used[best] = true;
    order.push_back(dist.point(best));
    at = best;
  }
  return make_route(field, start, std::move(order));
}

/// First-improvement 2-opt on an open tour with a fixed start.
///
/// Reversing visits[i..j] replaces legs (i-1, i) and (j, j+1) by (i-1, j)
/// and (i, j+1); when j is the last visit only the first leg changes. The
/// scan restarts after every applied move and stops when no reversal
/// shortens the tour by more than kTwoOptEpsilon.
inline Route improve_route_2opt(const FieldGeometry& field, const Route& route) {
  const std::size_t n = route.visits.size();
  if (n < 2) return route;
  const DistanceTable dist(field, route.start, route.visits);
  // order[k] indexes into dist; order[0] is the start.
  std::vector<std::size_t> order(n + 1);
  std::iota(order.begin(), order.end(), std::size_t{0});

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i < n && !improved; ++i) {
      for (std::size_t j = i + 1; j <= n && !improved; ++j) {
        double delta = dist(order[i - 1], order[j]) - dist(order[i - 1], order[i]);
        if (j < n) delta += dist(order[i], order[j + 1]) - dist(order[j], order[j + 1]);
        if (delta < -kTwoOptEpsilon) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                       order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          improved = true;
        }
      }
    }
  }

  std::vector<FieldPoint> visits;
  visits.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) visits.push_back(dist.point(order[k]));
  Route out = make_route(field, route.start, std::move(visits));
  // Guard against the recomputed sum drifting above the input by rounding.
  return out.total_distance <= route.total_distance ? out : route;
}

/// Minimum-length open tour by exhaustive enumeration. Among equal lengths
/// the lexicographically smallest visit sequence wins.
inline Route plan_route_exact(const FieldGeometry& field, const FieldPoint& start,
                              std::span<const FieldPoint> targets) {
  if (targets.size() > kExactPlannerLimit)
    throw SizeLimitError("exact planner supports at most " + std::to_string(kExactPlannerLimit) +
                         " targets, got " + std::to_string(targets.size()));
  detail::require_distinct(targets);
  std::vector<FieldPoint> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  const DistanceTable dist(field, start, sorted);
  const std::size_t n = sorted.size();

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  std::vector<std::size_t> best = perm;
  double best_len = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < n && len < best_len; ++k) {
      len += dist(at, perm[k]);
      at = perm[k];
    }
    if (len < best_len) {
      best_len = len;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<FieldPoint> visits;
  visits.reserve(n);
  for (auto k : best) visits.push_back(dist.point(k));
  return make_route(field, start, std::move(visits));
}

inline Route plan_route(Planner planner, const FieldGeometry& field, const FieldPoint& start,
                        std::span<const FieldPoint> targets) {
  switch (planner) {
    case Planner::NearestNeighbor: return plan_route_nearest_neighbor(field, start, targets);
    case Planner::NearestNeighbor2Opt:
      return improve_route_2opt(field, plan_route_nearest_neighbor(field, start, targets));
    case Planner::Exact: return plan_route_exact(field, start, targets);
  }
  throw DomainError("unknown planner");
}

inline std::string_view to_string(Planner p) {
  switch (p) {
    case Planner::NearestNeighbor: return "nn";
    case Planner::NearestNeighbor2Opt: return "nn2opt";
    case Planner::Exact: return "exact";
  }
  return "?";
}

inline Planner parse_planner(std::string_view s) {
  if (s == "nn") return Planner::NearestNeighbor;
  if (s == "nn2opt") return Planner::NearestNeighbor2Opt;
  if (s == "exact") return Planner::Exact;
  throw ConfigError("unknown planner '" + std::string(s) + "' (expected nn, nn2opt or exact)");
}

/// Cartesian polyline of one leg: along the row to the cheaper headland,
/// across, then along the destination row. Ties use the x = 0 headland.
/// The first point (a) is not emitted.
inline void append_leg_path(const FieldGeometry& field, const FieldPoint& a, const FieldPoint& b,
                            std::vector<Point2>& path) {
  if (a.row != b.row) {
    const double far = field.row_length();
    const double across = std::abs(a.row - b.row) * field.row_spacing();
    const double h = ((a.x + b.x) + across) <= (((far - a.x) + (far - b.x)) + across) ? 0.0 : far;
    path.push_back(field.to_cartesian({a.row, h}));
    path.push_back(field.to_cartesian({b.row, h}));
  }
  path.push_back(field.to_cartesian(b));
}

/// Service work owed at each stop. Co-located spots share one stop and are
/// all charged.
using ServiceTable = std::map<FieldPoint, std::vector<Difficulty>>;

/// Times a route: travel = distance / speed, one row transition per leg whose
/// endpoints lie on different rows, and the service owed at every visit.
inline PhaseResult route_time(const FieldGeometry& field, const AgentProfile& profile, const Route& route,
                              const ServiceTable& service) {
  PhaseResult r;
  r.distance = route.total_distance;
  r.travel_time = route.total_distance / profile.speed;
  FieldPoint at = route.start;
  r.path.push_back(field.to_cartesian(at));
  double service_sum = 0.0;
  double elapsed = 0.0;
  for (std::size_t k = 0; k < route.visits.size(); ++k) {
    const auto& v = route.visits[k];
    const auto it = service.find(v);
    if (it == service.end() || it->second.empty())
      throw DomainError("no service entry for visit (row " + std::to_string(v.row) + ", x " +
                        std::to_string(v.x) + ")");
    double here = 0.0;
    for (Difficulty d : it->second) here += service_time(profile, d);
    service_sum += here;
    const bool changes_row = v.row != at.row;
    if (changes_row) ++r.transitions;
    const double leg = k < route.leg_distances.size() ? route.leg_distances[k] : 0.0;
    elapsed += leg / profile.speed + (changes_row ? profile.row_transition_time : 0.0) + here;
    r.stops.push_back({at, v, leg, elapsed});
    append_leg_path(field, at, v, r.path);
    at = v;
  }
  r.service_time = service_sum;
  r.transition_time = static_cast<double>(r.transitions) * profile.row_transition_time;
  r.finalize();
  return r;
}

}  // namespace vinesim
