#include "zeno/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace zeno::sweep {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

DetectorModel with_lambda(const DetectorModel& det, double lambda) {
  if (det.kind() == DetectorModel::Kind::GaussianPointer) {
    return DetectorModel::gaussian(det.sigma(), lambda);
  }
  return DetectorModel::tabulated(det.table(), lambda, det.source_path());
}

Drive with_omega_l(const Drive& drive, double omega_l) {
  std::vector<std::pair<DriveElementKey, std::complex<double>>> elements(
      drive.elements().begin(), drive.elements().end());
  return Drive(elements, omega_l, drive.convention());
}

EngineRecord run_perturbative(const ScenarioConfig& cfg, const RunOptions& opt) {
  EngineRecord r;
  r.engine = Engine::Perturbative;
  const auto channels = cfg.drive.channels_from(cfg.system, cfg.initial);
  JumpResult sum;
  for (const Transition& tr : channels) {
    const JumpResult jr = jump_probability(cfg.system, cfg.drive, cfg.schedule,
                                           cfg.detector, tr, opt.quad);
    sum.w_free += jr.w_free;
    sum.w_meas += jr.w_meas;
    sum.w_interf += jr.w_interf;
  }
  sum.w_total = sum.w_free + sum.w_meas + sum.w_interf;
  r.jump = sum;
  r.has_components = true;
  r.survival = 1.0 - sum.w_total;
  if (r.survival < 0.0) {
    throw ValidityError(
        "perturbative: negative survival; outside the second-order regime");
  }
  r.has_survival = true;
  if (cfg.schedule.T > 0.0) {
    r.decay_rate = sum.w_total / cfg.schedule.T;
    r.has_rate = true;
  }
  r.ok = true;
  return r;
}

EngineRecord run_twolevel(const ScenarioConfig& cfg, const RunOptions& opt) {
  EngineRecord r;
  r.engine = Engine::TwoLevelClosed;
  const TwoLevelParams p = as_two_level(cfg);
  r.jump.w_free = wf_closed(p);
  r.jump.w_meas = wm_semiclosed(p, cfg.detector, opt.quad);
  r.jump.w_interf = wint_semiclosed(p, cfg.detector, opt.quad);
  r.jump.w_total = r.jump.w_free + r.jump.w_meas + r.jump.w_interf;
  r.has_components = true;
  r.survival = 1.0 - r.jump.w_total;
  r.has_survival = true;
  if (cfg.schedule.T > 0.0) {
    r.decay_rate = r.jump.w_total / cfg.schedule.T;
    r.has_rate = true;
  }
  r.ok = true;
  return r;
}

EngineRecord run_asymptotic(const ScenarioConfig& cfg) {
  EngineRecord r;
  r.engine = Engine::Asymptotic;
  const TwoLevelParams p = as_two_level(cfg);
  const ApproxResult a = w_result_approx(p, cfg.detector);
  r.jump.w_total = a.total;
  r.survival = 1.0 - a.total;
  r.has_survival = true;
  if (cfg.schedule.T > 0.0) {
    r.decay_rate = a.total / cfg.schedule.T;
    r.has_rate = true;
  }
  r.ok = true;
  return r;
}

EngineRecord run_oracle(const ScenarioConfig& cfg, const RunOptions& opt) {
  EngineRecord r;
  r.engine = Engine::Oracle;
  const auto channels = cfg.drive.channels_from(cfg.system, cfg.initial);
  auto grid = oracle::PointerGrid::gaussian(cfg.detector.sigma(),
                                            opt.oracle.grid_points,
                                            opt.oracle.grid_half_width_sigmas);
  auto state =
      oracle::JointState::pure(std::move(grid), cfg.system, cfg.initial);
  oracle::evolve_measurement(state, cfg.system, cfg.drive, cfg.detector,
                             cfg.schedule.t0, cfg.schedule.tau, opt.oracle);
  oracle::evolve_free(state, cfg.system, cfg.drive,
                      cfg.schedule.t0 + cfg.schedule.tau,
                      cfg.schedule.T - cfg.schedule.tau, opt.oracle);
  double total = 0.0;
  for (const Transition& tr : channels) {
    total += state.population(cfg.system, tr.final());
  }
  r.jump.w_total = total;
  r.survival = state.population(cfg.system, cfg.initial);
  r.has_survival = true;
  if (cfg.schedule.T > 0.0) {
    r.decay_rate = total / cfg.schedule.T;
    r.has_rate = true;
  }
  r.ok = true;
  return r;
}

void engine_columns(std::ostream& out, const std::vector<Engine>& engines) {
  for (Engine e : engines) {
    const std::string n = engine_name(e);
    out << ',' << n << "_w_free" << ',' << n << "_w_meas" << ',' << n
        << "_w_interf" << ',' << n << "_w_total" << ',' << n << "_survival"
        << ',' << n << "_decay_rate" << ',' << n << "_status";
  }
  for (size_t i = 0; i < engines.size(); ++i) {
    for (size_t j = i + 1; j < engines.size(); ++j) {
      out << ",dev_" << engine_name(engines[i]) << '_'
          << engine_name(engines[j]);
    }
  }
}

void engine_cells(std::ostream& out, const PointRecord& rec,
                  const std::vector<Engine>& engines) {
  for (const EngineRecord& er : rec.engines) {
    if (er.ok && er.has_components) {
      out << ',' << fmt(er.jump.w_free) << ',' << fmt(er.jump.w_meas) << ','
          << fmt(er.jump.w_interf);
    } else {
      out << ",,,";
    }
    out << ',' << (er.ok ? fmt(er.jump.w_total) : "");
    out << ',' << (er.ok && er.has_survival ? fmt(er.survival) : "");
    out << ',' << (er.ok && er.has_rate ? fmt(er.decay_rate) : "");
    out << ',' << (er.ok ? "ok" : sanitize(er.error));
  }
  for (size_t i = 0; i < engines.size(); ++i) {
    for (size_t j = i + 1; j < engines.size(); ++j) {
      const EngineRecord& a = rec.engines[i];
      const EngineRecord& b = rec.engines[j];
      if (a.ok && b.ok) {
        const double denom =
            std::max(std::abs(a.jump.w_total), std::abs(b.jump.w_total));
        const double dev =
            denom > 0.0 ? std::abs(a.jump.w_total - b.jump.w_total) / denom
                        : 0.0;
        out << ',' << fmt(dev);
      } else {
        out << ',';
      }
    }
  }
}

std::string row_status(const PointRecord& rec) {
  if (!rec.applied) return "failed";
  size_t ok = 0;
  for (const EngineRecord& er : rec.engines) ok += er.ok ? 1 : 0;
  if (ok == rec.engines.size()) return "ok";
  return ok == 0 ? "failed" : "partial";
}

void header_block(std::ostream& out, const ScenarioConfig& cfg) {
  out << "# generator: zeno\n";
  out << "# config: " << cfg.to_json().dump() << "\n";
}

}  // namespace

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::T: return "T";
    case Axis::Tau: return "tau";
    case Axis::Lambda: return "lambda";
    case Axis::Delta: return "delta";
  }
  return "?";
}

Axis axis_from_string(const std::string& s) {
  if (s == "T") return Axis::T;
  if (s == "tau") return Axis::Tau;
  if (s == "lambda") return Axis::Lambda;
  if (s == "delta") return Axis::Delta;
  throw ValidationError("sweep: unknown axis \"" + s +
                        "\" (expected T, tau, lambda, or delta)");
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Perturbative: return "perturbative";
    case Engine::TwoLevelClosed: return "twolevel_closed";
    case Engine::Asymptotic: return "asymptotic";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

Engine engine_from_string(const std::string& s) {
  if (s == "perturbative") return Engine::Perturbative;
  if (s == "twolevel_closed") return Engine::TwoLevelClosed;
  if (s == "asymptotic") return Engine::Asymptotic;
  if (s == "oracle") return Engine::Oracle;
  throw ValidationError("sweep: unknown engine \"" + s +
                        "\" (expected perturbative, twolevel_closed, "
                        "asymptotic, or oracle)");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("sweep: no axis values");
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("sweep: non-finite axis value");
  }
  for (size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1]) && !(values[i] < values[i - 1])) {
      throw ValidationError("sweep: axis values must be strictly monotone");
    }
    if (i >= 2) {
      const bool up = values[1] > values[0];
      if (up != (values[i] > values[i - 1])) {
        throw ValidationError("sweep: axis values must be strictly monotone");
      }
    }
  }
  if (engines.empty()) throw ValidationError("sweep: no engines selected");
}

std::vector<double> SweepSpec::spaced(double from, double to, int count,
                                      bool log_spacing) {
  if (count < 1) throw ValidationError("sweep: count must be >= 1");
  if (!std::isfinite(from) || !std::isfinite(to)) {
    throw ValidationError("sweep: range must be finite");
  }
  if (count == 1) {
    if (from != to) {
      throw ValidationError("sweep: count 1 requires from == to");
    }
    return {from};
  }
  if (from == to) throw ValidationError("sweep: empty range");
  std::vector<double> out(static_cast<size_t>(count));
  if (log_spacing) {
    if (!(from > 0.0) || !(to > 0.0)) {
      throw ValidationError("sweep: log spacing requires positive bounds");
    }
    const double lf = std::log(from), lt = std::log(to);
    for (int i = 0; i < count; ++i) {
      out[static_cast<size_t>(i)] =
          std::exp(lf + (lt - lf) * static_cast<double>(i) /
                            static_cast<double>(count - 1));
    }
  } else {
    for (int i = 0; i < count; ++i) {
      out[static_cast<size_t>(i)] =
          from + (to - from) * static_cast<double>(i) /
                     static_cast<double>(count - 1);
    }
  }
  out.front() = from;
  out.back() = to;
  return out;
}

bool PointRecord::all_ok() const {
  if (!applied) return false;
  for (const EngineRecord& er : engines) {
    if (!er.ok) return false;
  }
  return true;
}

TwoLevelParams as_two_level(const ScenarioConfig& cfg) {
  if (cfg.drive.convention() != DriveConvention::RWA) {
    throw ValidationError("twolevel: requires the RWA drive convention");
  }
  if (cfg.system.has_aux() || cfg.system.basis().size() != 2) {
    throw ValidationError("twolevel: system is not a bare two-level pair");
  }
  const BasisState lo = cfg.system.basis()[0];
  const BasisState hi = cfg.system.basis()[1];
  double e_lo = cfg.system.energy(lo.n);
  double e_hi = cfg.system.energy(hi.n);
  const BasisState lower = e_lo <= e_hi ? lo : hi;
  const BasisState upper = e_lo <= e_hi ? hi : lo;
  if (cfg.system.energy(lower.n) == cfg.system.energy(upper.n)) {
    throw ValidationError("twolevel: levels are degenerate");
  }
  if (cfg.initial != lower) {
    throw ValidationError("twolevel: initial state must be the lower level");
  }
  if (cfg.drive.elements().size() != 2) {  // one pair, stored in both directions
    throw ValidationError("twolevel: drive must couple exactly one pair");
  }
  const Transition up{lower.n, lower.alpha, upper.n, upper.alpha};
  const std::complex<double> v = cfg.drive.element(up);
  if (v == std::complex<double>{0.0, 0.0}) {
    throw ValidationError("twolevel: drive does not couple the two levels");
  }
  TwoLevelParams p;
  p.omega = cfg.system.energy(upper.n) - cfg.system.energy(lower.n);
  p.v = v;
  p.omega_l = cfg.drive.omega_l();
  p.sched = cfg.schedule;
  return p;
}

ScenarioConfig apply_axis(const ScenarioConfig& base, Axis axis, double value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case Axis::T:
      cfg.schedule.T = value;
      break;
    case Axis::Tau:
      cfg.schedule.tau = value;
      break;
    case Axis::Lambda:
      cfg.detector = with_lambda(base.detector, value);
      break;
    case Axis::Delta: {
      const auto channels = base.drive.channels_from(base.system, base.initial);
      if (channels.empty()) {
        throw ValidationError(
            "sweep: delta axis requires a driven transition from the initial "
            "state");
      }
      const double omega_ref =
          std::abs(omega_full(base.system, channels.front()));
      cfg.drive = with_omega_l(base.drive, omega_ref - value);
      break;
    }
  }
  cfg.schedule.validate();
  return cfg;
}

PointRecord run_point(const ScenarioConfig& cfg,
                      const std::vector<Engine>& engines,
                      const RunOptions& opt) {
  PointRecord rec;
  rec.applied = true;
  rec.t = cfg.schedule.T;
  rec.tau = cfg.schedule.tau;
  rec.lambda = cfg.detector.lambda();
  rec.omega_l = cfg.drive.omega_l();
  rec.width_c = cfg.detector.width_c();
  rec.lambda_eff = cfg.detector.lambda_eff();
  rec.engines.reserve(engines.size());
  for (Engine e : engines) {
    EngineRecord er;
    try {
      switch (e) {
        case Engine::Perturbative:
          er = run_perturbative(cfg, opt);
          break;
        case Engine::TwoLevelClosed:
          er = run_twolevel(cfg, opt);
          break;
        case Engine::Asymptotic:
          er = run_asymptotic(cfg);
          break;
        case Engine::Oracle:
          er = run_oracle(cfg, opt);
          break;
      }
    } catch (const std::exception& ex) {
      er = EngineRecord{};
      er.engine = e;
      er.ok = false;
      er.error = ex.what();
    }
    rec.engines.push_back(std::move(er));
  }
  return rec;
}

std::vector<PointRecord> run_sweep(const ScenarioConfig& base,
                                   const SweepSpec& spec,
                                   const RunOptions& opt) {
  spec.validate();
  const int n = static_cast<int>(spec.values.size());
  std::vector<PointRecord> records(static_cast<size_t>(n));
  const int jobs = std::max(1, opt.jobs);
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (int i = 0; i < n; ++i) {
    const double value = spec.values[static_cast<size_t>(i)];
    PointRecord rec;
    try {
      const ScenarioConfig cfg = apply_axis(base, spec.axis, value);
      rec = run_point(cfg, spec.engines, opt);
    } catch (const std::exception& ex) {
      rec = PointRecord{};
      rec.applied = false;
      rec.apply_error = ex.what();
      for (Engine e : spec.engines) {
        EngineRecord er;
        er.engine = e;
        er.ok = false;
        er.error = "point not evaluated";
        rec.engines.push_back(std::move(er));
      }
    }
    rec.axis_value = value;
    records[static_cast<size_t>(i)] = std::move(rec);
  }
  return records;
}

void write_point_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const std::vector<Engine>& engines,
                     const PointRecord& rec) {
  header_block(out, cfg);
  out << "T,tau,lambda,omega_l,lambda_eff,width_c";
  engine_columns(out, engines);
  out << ",row_status\n";
  out << fmt(rec.t) << ',' << fmt(rec.tau) << ',' << fmt(rec.lambda) << ','
      << fmt(rec.omega_l) << ',' << fmt(rec.lambda_eff) << ','
      << fmt(rec.width_c);
  engine_cells(out, rec, engines);
  out << ',' << row_status(rec) << "\n";
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg,
                     const SweepSpec& spec,
                     const std::vector<PointRecord>& records) {
  header_block(out, cfg);
  out << "# axis: " << axis_name(spec.axis) << "\n";
  out << "# engines:";
  for (size_t i = 0; i < spec.engines.size(); ++i) {
    out << (i == 0 ? " " : ",") << engine_name(spec.engines[i]);
  }
  out << "\n";
  out << "axis_value,T,tau,lambda,omega_l,lambda_eff,width_c";
  engine_columns(out, spec.engines);
  out << ",row_status\n";
  for (const PointRecord& rec : records) {
    out << fmt(rec.axis_value);
    if (rec.applied) {
      out << ',' << fmt(rec.t) << ',' << fmt(rec.tau) << ',' << fmt(rec.lambda)
          << ',' << fmt(rec.omega_l) << ',' << fmt(rec.lambda_eff) << ','
          << fmt(rec.width_c);
      engine_cells(out, rec, spec.engines);
      out << ',' << row_status(rec) << "\n";
    } else {
      out << ",,,,,,";
      for (size_t i = 0; i < spec.engines.size(); ++i) {
        out << ",,,,,,," << sanitize(rec.apply_error);
      }
      const size_t pairs = spec.engines.size() * (spec.engines.size() - 1) / 2;
      for (size_t i = 0; i < pairs; ++i) out << ',';
      out << ",failed\n";
    }
  }
  // Zeno linearity summary: least-squares decay rate versus period.
  if (spec.axis == Axis::T) {
    for (size_t e = 0; e < spec.engines.size(); ++e) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int m = 0;
      for (const PointRecord& rec : records) {
        if (!rec.applied || !rec.engines[e].ok || !rec.engines[e].has_rate) {
          continue;
        }
        const double x = rec.axis_value, y = rec.engines[e].decay_rate;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
      }
      if (m >= 2) {
        const double denom = m * sxx - sx * sx;
        if (denom != 0.0) {
          const double slope = (m * sxy - sx * sy) / denom;
          const double intercept = (sy - slope * sx) / m;
          out << "# fit_rate_slope_" << engine_name(spec.engines[e]) << ": "
              << fmt(slope) << "\n";
          out << "# fit_rate_intercept_" << engine_name(spec.engines[e])
              << ": " << fmt(intercept) << "\n";
        }
      }
    }
  }
}

}  // namespace zeno::sweep
