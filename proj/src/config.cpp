#include "zeno/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace zeno {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError("config: missing " + where + "." + key);
  }
  return j.at(key);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ValidationError("config: " + where + " must be a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw ValidationError("config: " + where + " must be finite");
  }
  return x;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw ValidationError("config: " + where + " must be an integer");
  }
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) {
    throw ValidationError("config: " + where + " must be a string");
  }
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw ValidationError("config: " + where + " must be an array");
  }
  return j;
}

LevelSystem parse_system(const json& j) {
  std::vector<Level> levels;
  for (const json& e : as_array(require(j, "levels", "system"), "system.levels")) {
    levels.push_back({as_int(require(e, "n", "system.levels[]"), "system.levels[].n"),
                      as_number(require(e, "energy", "system.levels[]"),
                                "system.levels[].energy")});
  }
  std::vector<AuxLevel> aux;
  if (j.contains("aux")) {
    for (const json& e : as_array(j.at("aux"), "system.aux")) {
      aux.push_back({as_int(require(e, "n", "system.aux[]"), "system.aux[].n"),
                     as_int(require(e, "alpha", "system.aux[]"), "system.aux[].alpha"),
                     as_number(require(e, "e1", "system.aux[]"), "system.aux[].e1")});
    }
  }
  return LevelSystem(std::move(levels), std::move(aux));
}

Drive parse_drive(const json& j) {
  std::vector<std::pair<DriveElementKey, std::complex<double>>> elements;
  for (const json& e :
       as_array(require(j, "elements", "drive"), "drive.elements")) {
    DriveElementKey key;
    key.f = as_int(require(e, "f", "drive.elements[]"), "drive.elements[].f");
    key.alpha1 = e.contains("alpha1")
                     ? as_int(e.at("alpha1"), "drive.elements[].alpha1")
                     : 0;
    key.i = as_int(require(e, "i", "drive.elements[]"), "drive.elements[].i");
    key.alpha = e.contains("alpha")
                    ? as_int(e.at("alpha"), "drive.elements[].alpha")
                    : 0;
    const double re = as_number(require(e, "re", "drive.elements[]"),
                                "drive.elements[].re");
    const double im =
        e.contains("im") ? as_number(e.at("im"), "drive.elements[].im") : 0.0;
    elements.emplace_back(key, std::complex<double>{re, im});
  }
  const double omega_l =
      as_number(require(j, "omega_l", "drive"), "drive.omega_l");
  DriveConvention conv = DriveConvention::RWA;
  if (j.contains("convention")) {
    const std::string s = as_string(j.at("convention"), "drive.convention");
    if (s == "rwa") {
      conv = DriveConvention::RWA;
    } else if (s == "full_cosine") {
      conv = DriveConvention::FullCosine;
    } else {
      throw ValidationError(
          "config: drive.convention must be \"rwa\" or \"full_cosine\"");
    }
  }
  return Drive(elements, omega_l, conv);
}

DetectorModel parse_detector(const json& j, const std::string& base_dir) {
  const std::string kind = as_string(require(j, "kind", "detector"), "detector.kind");
  const double lambda =
      as_number(require(j, "lambda", "detector"), "detector.lambda");
  if (kind == "gaussian") {
    return DetectorModel::gaussian(
        as_number(require(j, "sigma", "detector"), "detector.sigma"), lambda);
  }
  if (kind == "tabulated") {
    std::filesystem::path p =
        as_string(require(j, "table", "detector"), "detector.table");
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return DetectorModel::tabulated_from_file(p.string(), lambda);
  }
  throw ValidationError(
      "config: detector.kind must be \"gaussian\" or \"tabulated\"");
}

Schedule parse_schedule(const json& j) {
  Schedule s;
  s.tau = as_number(require(j, "tau", "schedule"), "schedule.tau");
  s.T = as_number(require(j, "T", "schedule"), "schedule.T");
  s.N = j.contains("N") ? as_int(j.at("N"), "schedule.N") : 1;
  s.t0 = j.contains("t0") ? as_number(j.at("t0"), "schedule.t0") : 0.0;
  s.validate();
  return s;
}

BasisState lowest_energy_state(const LevelSystem& sys) {
  BasisState best = sys.basis().front();
  double best_e = std::numeric_limits<double>::infinity();
  for (const BasisState& s : sys.basis()) {
    const double e = sys.energy(s.n) + sys.aux_energy(s.n, s.alpha);
    if (e < best_e) {
      best_e = e;
      best = s;
    }
  }
  return best;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j,
                                         const std::string& base_dir) {
  if (!j.is_object()) {
    throw ValidationError("config: top level must be an object");
  }
  ScenarioConfig cfg{parse_system(require(j, "system", "<top>")),
                     parse_drive(require(j, "drive", "<top>")),
                     parse_detector(require(j, "detector", "<top>"), base_dir),
                     parse_schedule(require(j, "schedule", "<top>")),
                     BasisState{}};
  if (j.contains("initial")) {
    const json& init = j.at("initial");
    cfg.initial.n = as_int(require(init, "n", "initial"), "initial.n");
    cfg.initial.alpha =
        init.contains("alpha") ? as_int(init.at("alpha"), "initial.alpha") : 0;
    if (!cfg.system.has_state(cfg.initial)) {
      throw ValidationError("config: initial state is not in the system");
    }
  } else {
    cfg.initial = lowest_energy_state(cfg.system);
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config: " + path + ": " + e.what());
  }
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return from_json(j, base_dir.empty() ? "." : base_dir);
}

nlohmann::json ScenarioConfig::to_json() const {
  json j;
  {
    json levels = json::array();
    std::vector<Level> sorted = system.levels();
    std::sort(sorted.begin(), sorted.end(),
              [](const Level& a, const Level& b) { return a.n < b.n; });
    for (const Level& l : sorted) {
      levels.push_back({{"n", l.n}, {"energy", l.energy}});
    }
    j["system"]["levels"] = std::move(levels);
    if (system.has_aux()) {
      json aux = json::array();
      std::vector<AuxLevel> sorted_aux = system.aux();
      std::sort(sorted_aux.begin(), sorted_aux.end(),
                [](const AuxLevel& a, const AuxLevel& b) {
                  return std::pair{a.n, a.alpha} < std::pair{b.n, b.alpha};
                });
      for (const AuxLevel& a : sorted_aux) {
        aux.push_back({{"n", a.n}, {"alpha", a.alpha}, {"e1", a.e1}});
      }
      j["system"]["aux"] = std::move(aux);
    }
  }
  {
    json elements = json::array();
    for (const auto& [key, v] : drive.elements()) {
      // One entry per unordered pair; the constructor restores the conjugate.
      if (BasisState{key.i, key.alpha} < BasisState{key.f, key.alpha1}) {
        elements.push_back({{"f", key.f},
                            {"alpha1", key.alpha1},
                            {"i", key.i},
                            {"alpha", key.alpha},
                            {"re", v.real()},
                            {"im", v.imag()}});
      }
    }
    j["drive"]["elements"] = std::move(elements);
    j["drive"]["omega_l"] = drive.omega_l();
    j["drive"]["convention"] =
        drive.convention() == DriveConvention::RWA ? "rwa" : "full_cosine";
  }
  if (detector.kind() == DetectorModel::Kind::GaussianPointer) {
    j["detector"] = {{"kind", "gaussian"},
                     {"sigma", detector.sigma()},
                     {"lambda", detector.lambda()}};
  } else {
    if (detector.source_path().empty()) {
      throw Error("config: cannot serialize an in-memory detector table");
    }
    j["detector"] = {{"kind", "tabulated"},
                     {"table", detector.source_path()},
                     {"lambda", detector.lambda()}};
  }
  j["schedule"] = {{"tau", schedule.tau},
                   {"T", schedule.T},
                   {"N", schedule.N},
                   {"t0", schedule.t0}};
  j["initial"] = {{"n", initial.n}, {"alpha", initial.alpha}};
  return j;
}

void ScenarioConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("config: cannot write " + path);
  out << to_json().dump(2) << "\n";
}

}  // namespace zeno
