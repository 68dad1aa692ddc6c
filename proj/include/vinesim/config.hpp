#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vinesim/agents.hpp"
#include "vinesim/error.hpp"
#include "vinesim/experiment.hpp"
#include "vinesim/field.hpp"
#include "vinesim/routing.hpp"
#include "vinesim/yield_map.hpp"

namespace vinesim {

/// Everything a run can be configured with. Loaded from a JSON document
/// whose keys are either nested sections ({"field": {"num_rows": 52}}) or
/// dotted names ("field.num_rows": 52); both spellings may be mixed.
struct RunConfig {
  ScenarioConfig scenario;

  double yield_cell_size = 26.0;
  double yield_threshold = 0.0;
  std::optional<std::string> yield_map_path;
  Point2 yield_origin{};
  std::map<long, double> yield_class_values;
  Connectivity yield_connectivity = Connectivity::Four;

  std::string output_dir = "out";
  int verbosity = 0;
};

namespace detail {

inline void flatten(const nlohmann::json& j, const std::string& prefix, std::map<std::string, nlohmann::json>& out) {
  if (j.is_object() && !(prefix.ends_with("class_values"))) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (out.contains(prefix)) throw ConfigError("key '" + prefix + "' given twice");
  out[prefix] = j;
}

class KeyReader {
 public:
  explicit KeyReader(std::map<std::string, nlohmann::json> keys) : keys_(std::move(keys)) {}

  template <typename T>
  std::optional<T> get(const std::string& key) {
    const auto it = keys_.find(key);
    if (it == keys_.end()) return std::nullopt;
    used_.insert(key);
    try {
      return it->second.get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config key '" + key + "' has the wrong type");
    }
  }

  std::set<std::string> agent_names() const {
    std::set<std::string> names;
    for (const auto& [k, _] : keys_) {
      if (!k.starts_with("agents.")) continue;
      const auto dot = k.find('.', 7);
      if (dot != std::string::npos) names.insert(k.substr(7, dot - 7));
    }
    return names;
  }

  void reject_unused() const {
    for (const auto& [k, _] : keys_)
      if (!used_.contains(k)) throw ConfigError("unknown config key '" + k + "'");
  }

 private:
  std::map<std::string, nlohmann::json> keys_;
  std::set<std::string> used_;
};

}  // namespace detail

/// Applies a parsed JSON document on top of `base`. Unknown keys are errors.
inline RunConfig apply_config(const nlohmann::json& doc, RunConfig base = {}) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  std::map<std::string, nlohmann::json> flat;
  detail::flatten(doc, "", flat);
  detail::KeyReader keys(std::move(flat));
  RunConfig cfg = std::move(base);
  auto& sc = cfg.scenario;

  if (auto preset = keys.get<std::string>("field.preset")) sc.field = field_preset(*preset);
  {
    const auto rows = keys.get<int>("field.num_rows");
    const auto length = keys.get<double>("field.row_length_m");
    const auto spacing = keys.get<double>("field.row_spacing_m");
    if (rows || length || spacing) {
      const int r = rows.value_or(sc.field.num_rows());
      const double l = length.value_or(sc.field.row_length());
      try {
        const double sp = spacing ? *spacing : (rows || length ? ten_acre_spacing(r, l) : sc.field.row_spacing());
        sc.field = FieldGeometry(r, l, sp);
      } catch (const InvalidGeometry& e) {
        throw ConfigError(std::string("field: ") + e.what());
      }
    }
  }

  if (auto v = keys.get<long long>("experiment.trials")) {
    if (*v < 1) throw ConfigError("experiment.trials must be >= 1");
    sc.trials = static_cast<std::size_t>(*v);
  }
  if (auto v = keys.get<std::vector<long long>>("experiment.spot_counts")) {
    sc.spot_counts.clear();
    for (auto n : *v) {
      if (n < 0) throw ConfigError("experiment.spot_counts must be non-negative");
      sc.spot_counts.push_back(static_cast<std::size_t>(n));
    }
  }
  if (auto v = keys.get<double>("experiment.p_difficult")) sc.p_difficult = *v;
  if (auto v = keys.get<std::uint64_t>("experiment.master_seed")) sc.master_seed = *v;
  if (auto v = keys.get<std::vector<std::string>>("experiment.agents")) sc.agents = *v;
  if (auto v = keys.get<unsigned>("experiment.threads")) sc.threads = *v;

  for (const auto& name : keys.agent_names()) {
    const std::string p = "agents." + name + ".";
    const bool known = sc.profiles.contains(name);
    AgentProfile prof = known ? sc.profiles.at(name) : AgentProfile{};
    prof.name = name;
    auto required = [&](const char* key) {
      if (!known) throw ConfigError("new agent '" + name + "' must set " + p + key);
    };
    if (auto v = keys.get<double>(p + "time_easy_s")) prof.time_easy = *v; else required("time_easy_s");
    if (auto v = keys.get<double>(p + "time_difficult_s")) prof.time_difficult = *v; else required("time_difficult_s");
    if (auto v = keys.get<double>(p + "speed_mps")) prof.speed = *v; else required("speed_mps");
    if (auto v = keys.get<double>(p + "row_transition_s")) prof.row_transition_time = *v; else required("row_transition_s");
    if (auto v = keys.get<std::string>(p + "strategy")) prof.scan_strategy = parse_scan_strategy(*v); else required("strategy");
    if (auto v = keys.get<bool>(p + "has_memory")) prof.has_memory = *v;
    prof.validate();
    sc.profiles[name] = prof;
  }

  if (auto v = keys.get<std::string>("planner.kind")) sc.planner = parse_planner(*v);

  if (auto v = keys.get<double>("yield.cell_size_m")) cfg.yield_cell_size = *v;
  if (auto v = keys.get<double>("yield.threshold")) cfg.yield_threshold = *v;
  if (auto v = keys.get<std::string>("yield.map")) cfg.yield_map_path = *v;
  if (auto v = keys.get<double>("yield.origin_x_m")) cfg.yield_origin.x = *v;
  if (auto v = keys.get<double>("yield.origin_y_m")) cfg.yield_origin.y = *v;
  if (auto v = keys.get<std::map<std::string, double>>("yield.class_values")) {
    cfg.yield_class_values.clear();
    for (const auto& [k, val] : *v) {
      try {
        std::size_t used = 0;
        const long cls = std::stol(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
        cfg.yield_class_values[cls] = val;
      } catch (const std::logic_error&) {
        throw ConfigError("yield.class_values key '" + k + "' is not an integer class");
      }
    }
  }
  if (auto v = keys.get<int>("yield.connectivity")) {
    if (*v != 4 && *v != 8) throw ConfigError("yield.connectivity must be 4 or 8");
    cfg.yield_connectivity = *v == 4 ? Connectivity::Four : Connectivity::Eight;
  }

  if (auto v = keys.get<std::string>("output.dir")) cfg.output_dir = *v;
  if (auto v = keys.get<int>("output.verbosity")) cfg.verbosity = *v;

  keys.reject_unused();
  return cfg;
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return apply_config(doc, std::move(base));
}

}  // namespace vinesim
