#pragma once

#include <map>
#include <string>
#include <string_view>

#include "vinesim/error.hpp"
#include "vinesim/field.hpp"

namespace vinesim {

/// How an agent covers a row while scanning.
///  - SinglePassBothSides: one pass sees both canopy sides (human walking).
///  - SinglePassDualCamera: one pass, left and right cameras at once.
///  - DoublePass: one forward camera; each row is driven out and back, one
///    side per pass, with a U-turn at the far headland.
enum class ScanStrategy { SinglePassBothSides, SinglePassDualCamera, DoublePass };

struct AgentProfile {
  std::string name;
  double time_easy = 0.0;            // s per Easy spot
  double time_difficult = 0.0;       // s per Difficult spot
  double speed = 1.0;                // m/s
  double row_transition_time = 0.0;  // s per row-entry event
  ScanStrategy scan_strategy = ScanStrategy::SinglePassBothSides;
  bool has_memory = false;  // records spot coordinates for targeted treatment

  void validate() const {
    if (!(time_easy >= 0.0) || !(time_difficult >= 0.0) || !(row_transition_time >= 0.0))
      throw ConfigError("agent '" + name + "': times must be non-negative");
    if (!(speed > 0.0)) throw ConfigError("agent '" + name + "': speed must be positive");
  }

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

inline double service_time(const AgentProfile& profile, Difficulty d) noexcept {
  return d == Difficulty::Easy ? profile.time_easy : profile.time_difficult;
}

inline AgentProfile human_profile() {
  return {"human", 5.0, 5.0, 1.25, 5.0, ScanStrategy::SinglePassBothSides, false};
}

inline AgentProfile immersive_profile() {
  return {"immersive", 24.0, 50.0, 1.25, 10.0, ScanStrategy::DoublePass, true};
}

inline AgentProfile non_immersive_profile() {
  return {"non_immersive", 24.0, 50.0, 1.25, 10.0, ScanStrategy::SinglePassDualCamera, true};
}

inline std::map<std::string, AgentProfile> builtin_profiles() {
  std::map<std::string, AgentProfile> out;
  for (auto p : {human_profile(), immersive_profile(), non_immersive_profile()}) out.emplace(p.name, p);
  return out;
}

inline std::string_view to_string(ScanStrategy s) {
  switch (s) {
    case ScanStrategy::SinglePassBothSides: return "single_pass_both_sides";
    case ScanStrategy::SinglePassDualCamera: return "single_pass_dual_camera";
    case ScanStrategy::DoublePass: return "double_pass";
  }
  return "?";
}

inline ScanStrategy parse_scan_strategy(std::string_view s) {
  if (s == "single_pass_both_sides") return ScanStrategy::SinglePassBothSides;
  if (s == "single_pass_dual_camera") return ScanStrategy::SinglePassDualCamera;
  if (s == "double_pass") return ScanStrategy::DoublePass;
  throw ConfigError("unknown scan strategy '" + std::string(s) + "'");
}

}  // namespace vinesim
