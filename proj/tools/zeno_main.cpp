#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/config.hpp"
#include "zeno/oracle.hpp"
#include "zeno/sweep.hpp"

namespace {

using zeno::sweep::Engine;

std::vector<Engine> parse_engines(const std::string& csv, bool with_oracle) {
  std::vector<Engine> engines;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Engine e = zeno::sweep::engine_from_string(item);
    if (std::find(engines.begin(), engines.end(), e) == engines.end()) {
      engines.push_back(e);
    }
  }
  if (with_oracle &&
      std::find(engines.begin(), engines.end(), Engine::Oracle) ==
          engines.end()) {
    engines.push_back(Engine::Oracle);
  }
  if (engines.empty()) {
    throw zeno::ValidationError("cli: no engines selected");
  }
  return engines;
}

zeno::sweep::RunOptions make_run_options(int jobs) {
  zeno::sweep::RunOptions opt;
  opt.jobs = jobs;
  if (const char* env = std::getenv("ZENO_QUAD_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
      throw zeno::ValidationError(
          "cli: ZENO_QUAD_TOL must be a positive number");
    }
    opt.quad.rel_tol = tol;
  }
  return opt;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw zeno::Error("cli: cannot write " + out_path);
  out << text;
}

void write_cycles(const std::string& path, const zeno::ScenarioConfig& cfg,
                  bool exact, const zeno::sweep::RunOptions& opt) {
  std::ostringstream os;
  os << "cycle,survival,exact_or_perturbative\n";
  char buf[40];
  if (exact) {
    const auto seq = zeno::oracle::repeated_cycles(
        cfg.system, cfg.drive, cfg.detector, cfg.schedule, cfg.initial,
        opt.oracle);
    for (size_t c = 0; c < seq.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.16e", seq[c]);
      os << (c + 1) << ',' << buf << ",exact\n";
    }
  } else {
    const double w = zeno::survival(cfg.system, cfg.drive, cfg.schedule,
                                    cfg.detector, cfg.initial, opt.quad);
    double acc = 1.0;
    for (int c = 1; c <= cfg.schedule.N; ++c) {
      acc *= w;
      std::snprintf(buf, sizeof(buf), "%.16e", acc);
      os << c << ',' << buf << ",perturbative\n";
    }
  }
  std::ofstream out(path);
  if (!out) throw zeno::Error("cli: cannot write " + path);
  out << os.str();
}

int exit_code_point(const zeno::sweep::PointRecord& rec) {
  return rec.all_ok() ? 0 : 2;
}

int exit_code_sweep(const std::vector<zeno::sweep::PointRecord>& records) {
  size_t ok = 0;
  for (const auto& rec : records) ok += rec.all_ok() ? 1 : 0;
  if (ok == records.size()) return 0;
  return ok == 0 ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Jump probabilities, survival, and decay rates for a driven system "
      "under repeated finite-duration measurements (hbar = 1 units)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string engines_csv;
  std::string out_path;
  std::string cycles_out;
  bool with_oracle = false;
  int jobs = 1;

  CLI::App* point = app.add_subcommand("point", "Evaluate a single scenario");
  point->add_option("config", config_path, "Scenario config (JSON)")
      ->required();
  point->add_option("--engines", engines_csv,
                    "Comma-separated engines (perturbative, twolevel_closed, "
                    "asymptotic, oracle)");
  point->add_flag("--oracle", with_oracle, "Also run the exact oracle");
  point->add_option("--out", out_path, "Write CSV here instead of stdout");
  point->add_option("--cycles-out", cycles_out,
                    "Write the per-cycle survival sequence (N cycles) here");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  sweep->add_option("config", config_path, "Scenario config (JSON)")
      ->required();
  std::string axis_str;
  double from = 0.0, to = 0.0;
  int count = 0;
  std::string spacing = "linear";
  sweep->add_option("--axis", axis_str, "T, tau, lambda, or delta")
      ->required();
  sweep->add_option("--from", from, "First axis value")->required();
  sweep->add_option("--to", to, "Last axis value")->required();
  sweep->add_option("--count", count, "Number of axis values")->required();
  sweep->add_option("--spacing", spacing, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--engines", engines_csv, "Comma-separated engines");
  sweep->add_flag("--oracle", with_oracle, "Also run the exact oracle");
  sweep->add_option("--jobs", jobs, "Worker threads for sweep points")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    const zeno::ScenarioConfig cfg = zeno::ScenarioConfig::load(config_path);
    const zeno::sweep::RunOptions opt = make_run_options(jobs);

    if (point->parsed()) {
      const auto engines = parse_engines(
          engines_csv.empty() ? "perturbative,twolevel_closed,asymptotic"
                              : engines_csv,
          with_oracle);
      const auto rec = zeno::sweep::run_point(cfg, engines, opt);
      std::ostringstream os;
      zeno::sweep::write_point_csv(os, cfg, engines, rec);
      write_output(out_path, os.str());
      if (!cycles_out.empty()) {
        const bool exact =
            std::find(engines.begin(), engines.end(), Engine::Oracle) !=
            engines.end();
        write_cycles(cycles_out, cfg, exact, opt);
      }
      return exit_code_point(rec);
    }

    zeno::sweep::SweepSpec spec;
    spec.axis = zeno::sweep::axis_from_string(axis_str);
    spec.values =
        zeno::sweep::SweepSpec::spaced(from, to, count, spacing == "log");
    spec.engines = parse_engines(
        engines_csv.empty() ? "perturbative,asymptotic" : engines_csv,
        with_oracle);
    spec.validate();
    const auto records = zeno::sweep::run_sweep(cfg, spec, opt);
    std::ostringstream os;
    zeno::sweep::write_sweep_csv(os, cfg, spec, records);
    write_output(out_path, os.str());
    return exit_code_sweep(records);
  } catch (const zeno::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
