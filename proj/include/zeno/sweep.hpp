#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zeno/config.hpp"
#include "zeno/oracle.hpp"
#include "zeno/perturbation.hpp"
#include "zeno/twolevel.hpp"

namespace zeno::sweep {

enum class Axis { T, Tau, Lambda, Delta };
enum class Engine { Perturbative, TwoLevelClosed, Asymptotic, Oracle };

std::string axis_name(Axis axis);
Axis axis_from_string(const std::string& s);
std::string engine_name(Engine e);
Engine engine_from_string(const std::string& s);

struct SweepSpec {
  Axis axis = Axis::T;
  std::vector<double> values;
  std::vector<Engine> engines;

  void validate() const;
  // count values from `from` to `to` inclusive, linear or logarithmic.
  static std::vector<double> spaced(double from, double to, int count,
                                    bool log_spacing);
};

struct EngineRecord {
  Engine engine = Engine::Perturbative;
  bool ok = false;
  std::string error;
  bool has_components = false;  // w_free / w_meas / w_interf meaningful
  JumpResult jump;
  bool has_survival = false;
  double survival = 0.0;
  bool has_rate = false;
  double decay_rate = 0.0;
};

struct PointRecord {
  double axis_value = 0.0;
  bool applied = false;  // axis value produced a valid scenario
  std::string apply_error;
  double t = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double omega_l = 0.0;
  double lambda_eff = 0.0;
  double width_c = 0.0;
  std::vector<EngineRecord> engines;

  bool all_ok() const;
};

struct RunOptions {
  int jobs = 1;
  quad::Options quad;
  oracle::Options oracle;
};

// The driven-two-level reduction of a scenario: two bare levels, one drive
// element between them, RWA, starting from the lower level. Throws
// ValidationError when the scenario has any other shape.
TwoLevelParams as_two_level(const ScenarioConfig& cfg);

// New scenario with one parameter replaced. The delta axis retunes the
// carrier to omega_ref - delta, where omega_ref is the frequency of the
// first driven transition out of the initial state.
ScenarioConfig apply_axis(const ScenarioConfig& base, Axis axis, double value);

PointRecord run_point(const ScenarioConfig& cfg,
                      const std::vector<Engine>& engines,
                      const RunOptions& opt);

std::vector<PointRecord> run_sweep(const ScenarioConfig& base,
                                   const SweepSpec& spec,
                                   const RunOptions& opt);

void write_point_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const std::vector<Engine>& engines,
                     const PointRecord& rec);

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const SweepSpec& spec,
                     const std::vector<PointRecord>& records);

}  // namespace zeno::sweep
