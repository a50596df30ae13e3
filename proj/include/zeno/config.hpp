#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "zeno/detector.hpp"
#include "zeno/system.hpp"

namespace zeno {

// One fully validated scenario: who is measured, how it is driven, what
// measures it, and when. JSON sections: system, drive, detector, schedule,
// plus an optional initial state (default: the lowest-energy basis state).
struct ScenarioConfig {
  LevelSystem system;
  Drive drive;
  DetectorModel detector;
  Schedule schedule;
  BasisState initial;

  static ScenarioConfig load(const std::string& path);
  // base_dir resolves relative detector table paths.
  static ScenarioConfig from_json(const nlohmann::json& j,
                                  const std::string& base_dir = ".");
  nlohmann::json to_json() const;
  void save(const std::string& path) const;
};

}  // namespace zeno
