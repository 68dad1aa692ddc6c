#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "vinesim/agents.hpp"
#include "vinesim/error.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_sim.hpp"
#include "vinesim/random.hpp"
#include "vinesim/routing.hpp"

namespace vinesim {

enum class Phase { Detection, Treatment, Total };

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Detection: return "detection";
    case Phase::Treatment: return "treatment";
    case Phase::Total: return "total";
  }
  return "?";
}

inline Phase parse_phase(std::string_view s) {
  if (s == "detection") return Phase::Detection;
  if (s == "treatment") return Phase::Treatment;
  if (s == "total") return Phase::Total;
  throw InputFormatError("unknown phase '" + std::string(s) + "'");
}

inline constexpr std::string_view kBaselineAgent = "human";

struct ScenarioConfig {
  FieldGeometry field = preset_52x227();
  std::vector<std::size_t> spot_counts{20, 30, 40};
  std::size_t trials = 100;
  double p_difficult = 0.5;
  std::uint64_t master_seed = 1;
  std::vector<std::string> agents{"human", "immersive", "non_immersive"};
  std::map<std::string, AgentProfile> profiles = builtin_profiles();
  Planner planner = Planner::NearestNeighbor2Opt;
  unsigned threads = 1;  // 0 = hardware concurrency

  void validate() const {
    if (trials < 1) throw ConfigError("experiment.trials must be >= 1");
    if (spot_counts.empty()) throw ConfigError("experiment.spot_counts must not be empty");
    if (!(p_difficult >= 0.0 && p_difficult <= 1.0))
      throw ConfigError("experiment.p_difficult must lie in [0, 1]");
    if (agents.empty()) throw ConfigError("no agents selected");
    for (const auto& name : agents) profile(name).validate();
    if (planner == Planner::Exact)
      for (auto n : spot_counts)
        if (n > kExactPlannerLimit)
          throw ConfigError("planner.kind = exact supports at most " + std::to_string(kExactPlannerLimit) +
                            " spots per scenario");
  }

  const AgentProfile& profile(const std::string& name) const {
    const auto it = profiles.find(name);
    if (it == profiles.end()) throw ConfigError("unknown agent '" + name + "'");
    return it->second;
  }
};

/// (agent_mean - baseline_mean) / baseline_mean * 100.
inline double percent_difference(double agent_mean, double baseline_mean) {
  if (!(baseline_mean > 0.0)) throw DomainError("percent difference needs a positive baseline");
  return (agent_mean - baseline_mean) / baseline_mean * 100.0;
}

struct StatRow {
  std::string agent;
  std::size_t spots = 0;
  Phase phase = Phase::Detection;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1); 0 for a single trial
  double min = 0.0;
  double max = 0.0;
  std::optional<double> pct_diff_vs_baseline;  // empty when the baseline agent was not run
  std::vector<double> samples;                 // per-trial totals in trial-index order
};

struct ExperimentStats {
  std::vector<StatRow> rows;  // ordered by (spot count, agent, phase) in config order

  const StatRow& at(std::string_view agent, std::size_t spots, Phase phase) const {
    for (const auto& r : rows)
      if (r.agent == agent && r.spots == spots && r.phase == phase) return r;
    throw DomainError("no statistics for agent '" + std::string(agent) + "' at " + std::to_string(spots) +
                      " spots");
  }

  const StatRow* find(std::string_view agent, std::size_t spots, Phase phase) const {
    for (const auto& r : rows)
      if (r.agent == agent && r.spots == spots && r.phase == phase) return &r;
    return nullptr;
  }
};

/// Aggregates samples in index order so the result is independent of which
/// thread produced them.
inline StatRow summarize_samples(std::vector<double> samples) {
  StatRow row;
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double n = static_cast<double>(samples.size());
  row.mean = sum / n;
  double ss = 0.0;
  for (double v : samples) ss += (v - row.mean) * (v - row.mean);
  row.std = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  row.min = *lo;
  row.max = *hi;
  if (row.min == row.max) {
    // Constant samples: report them exactly rather than via rounded sums.
    row.mean = row.min;
    row.std = 0.0;
  }
  row.mean = std::clamp(row.mean, row.min, row.max);
  row.samples = std::move(samples);
  return row;
}

/// One paired trial: a single spot set shared by every agent.
struct TrialOutcome {
  std::vector<double> detection;  // per agent, config order
  std::vector<double> treatment;
};

inline TrialOutcome run_trial(const ScenarioConfig& config, std::size_t spot_count, std::size_t trial_index) {
  const auto seed = trial_seed(config.master_seed, spot_count, trial_index);
  const auto spots = generate_spots(config.field, spot_count, config.p_difficult, seed);
  TrialOutcome out;
  for (const auto& name : config.agents) {
    const AgentProfile& profile = config.profile(name);
    const PhaseResult scan = simulate_scan(config.field, profile, spots);
    const std::span<const Spot> recorded = scan.visited_spots;
    const PhaseResult treat = simulate_treatment(config.field, profile, recorded, config.planner);
    out.detection.push_back(scan.total_time);
    out.treatment.push_back(treat.total_time);
  }
  return out;
}

/// Monte Carlo batch over every (spot count, trial). Trial seeds come from
/// trial_seed(master_seed, spot_count, trial_index); trials may run on any
/// number of threads and the statistics are bit-identical regardless.
inline ExperimentStats run_experiment(const ScenarioConfig& config) {
  config.validate();
  const std::size_t n_scen = config.spot_counts.size();
  const std::size_t n_trials = config.trials;
  std::vector<TrialOutcome> outcomes(n_scen * n_trials);

  unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, outcomes.size()));
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < outcomes.size(); k += stride)
      outcomes[k] = run_trial(config, config.spot_counts[k / n_trials], k % n_trials);
  };
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            work(w, workers);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExperimentStats stats;
  for (std::size_t s = 0; s < n_scen; ++s) {
    const std::size_t first = stats.rows.size();
    for (std::size_t a = 0; a < config.agents.size(); ++a) {
      std::vector<double> det(n_trials), treat(n_trials), total(n_trials);
      for (std::size_t t = 0; t < n_trials; ++t) {
        const auto& o = outcomes[s * n_trials + t];
        det[t] = o.detection[a];
        treat[t] = o.treatment[a];
        total[t] = o.detection[a] + o.treatment[a];
      }
      for (auto [phase, samples] : {std::pair{Phase::Detection, &det}, std::pair{Phase::Treatment, &treat},
                                    std::pair{Phase::Total, &total}}) {
        StatRow row = summarize_samples(std::move(*samples));
        row.agent = config.agents[a];
        row.spots = config.spot_counts[s];
        row.phase = phase;
        stats.rows.push_back(std::move(row));
      }
    }
    for (std::size_t i = first; i < stats.rows.size(); ++i) {
      auto& row = stats.rows[i];
      for (std::size_t j = first; j < stats.rows.size(); ++j) {
        const auto& base = stats.rows[j];
        if (base.agent == kBaselineAgent && base.phase == row.phase && base.mean > 0.0)
          row.pct_diff_vs_baseline = percent_difference(row.mean, base.mean);
      }
    }
  }
  return stats;
}

/// Human-style exhaustive survey against a robot's targeted survey of the
/// same zone epicenters.
struct YieldSurveyComparison {
  std::size_t zone_count = 0;
  std::string full_agent;
  std::string targeted_agent;
  PhaseResult full_coverage;
  PhaseResult targeted;

  double pct_diff() const { return percent_difference(targeted.total_time, full_coverage.total_time); }
};

// The exact planner is limited to small target sets; larger surveys fall
// back to nearest neighbor + 2-opt.
inline Planner survey_planner(Planner requested, std::size_t zone_count) {
  return requested == Planner::Exact && zone_count > kExactPlannerLimit ? Planner::NearestNeighbor2Opt
                                                                         : requested;
}

inline YieldSurveyComparison compare_yield_survey(const FieldGeometry& field, const AgentProfile& full_agent,
                                                  const AgentProfile& targeted_agent,
                                                  std::span<const ZoneEpicenter> zones, Planner planner) {
  YieldSurveyComparison c;
  c.zone_count = zones.size();
  c.full_agent = full_agent.name;
  c.targeted_agent = targeted_agent.name;
  c.full_coverage = simulate_yield_survey(field, full_agent, zones, SurveyMode::FullCoverage, planner);
  c.targeted = simulate_yield_survey(field, targeted_agent, zones, SurveyMode::Targeted,
                                     survey_planner(planner, zones.size()));
  return c;
}

}  // namespace vinesim
