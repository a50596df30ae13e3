#include "zeno/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zeno {

namespace {

std::string state_name(const BasisState& s) {
  return "(" + std::to_string(s.n) + "," + std::to_string(s.alpha) + ")";
}

}  // namespace

LevelSystem::LevelSystem(std::vector<Level> levels, std::vector<AuxLevel> aux)
    : levels_(std::move(levels)), aux_(std::move(aux)) {
  if (levels_.empty()) throw ValidationError("system: no levels given");
  for (const Level& l : levels_) {
    if (!std::isfinite(l.energy)) {
      throw ValidationError("system: non-finite energy for level " +
                            std::to_string(l.n));
    }
    if (!energy_by_n_.emplace(l.n, l.energy).second) {
      throw ValidationError("system: duplicate level index " +
                            std::to_string(l.n));
    }
  }
  for (const AuxLevel& a : aux_) {
    if (!std::isfinite(a.e1)) {
      throw ValidationError("system: non-finite E1 entry");
    }
    if (!energy_by_n_.count(a.n)) {
      throw ValidationError("system: aux entry references unknown level " +
                            std::to_string(a.n));
    }
    if (!e1_by_state_.emplace(std::pair{a.n, a.alpha}, a.e1).second) {
      throw ValidationError("system: duplicate aux entry for " +
                            state_name({a.n, a.alpha}));
    }
  }
  if (aux_.empty()) {
    for (const auto& [n, _] : energy_by_n_) basis_.push_back({n, 0});
  } else {
    for (const auto& [key, _] : e1_by_state_) basis_.push_back({key.first, key.second});
  }
}

double LevelSystem::energy(int n) const {
  auto it = energy_by_n_.find(n);
  if (it == energy_by_n_.end()) {
    throw LookupError("system: unknown level " + std::to_string(n));
  }
  return it->second;
}

double LevelSystem::aux_energy(int n, int alpha) const {
  if (aux_.empty()) return 0.0;
  auto it = e1_by_state_.find({n, alpha});
  if (it == e1_by_state_.end()) {
    throw LookupError("system: missing aux entry for " + state_name({n, alpha}));
  }
  return it->second;
}

bool LevelSystem::has_state(const BasisState& s) const {
  return std::binary_search(basis_.begin(), basis_.end(), s);
}

int LevelSystem::state_index(const BasisState& s) const {
  auto it = std::lower_bound(basis_.begin(), basis_.end(), s);
  if (it == basis_.end() || *it != s) {
    throw LookupError("system: unknown state " + state_name(s));
  }
  return static_cast<int>(it - basis_.begin());
}

void validate_transition(const LevelSystem& sys, const Transition& tr) {
  if (!sys.has_state(tr.initial())) {
    throw LookupError("transition: unknown initial state " +
                      state_name(tr.initial()));
  }
  if (!sys.has_state(tr.final())) {
    throw LookupError("transition: unknown final state " +
                      state_name(tr.final()));
  }
  if (tr.initial() == tr.final()) {
    throw ValidationError("transition: initial and final states coincide");
  }
}

double omega_fi(const LevelSystem& sys, const Transition& tr) {
  return sys.energy(tr.f) - sys.energy(tr.i);
}

double omega_full(const LevelSystem& sys, const Transition& tr) {
  return omega_fi(sys, tr) + sys.aux_energy(tr.f, tr.alpha1) -
         sys.aux_energy(tr.i, tr.alpha);
}

Drive::Drive(const std::vector<std::pair<DriveElementKey, std::complex<double>>>& elements,
             double omega_l, DriveConvention convention)
    : omega_l_(omega_l), convention_(convention) {
  if (!(omega_l >= 0.0)) {
    throw ValidationError("drive: omega_L must be >= 0");
  }
  for (const auto& [key, v] : elements) {
    if (key.f == key.i && key.alpha1 == key.alpha) {
      throw ValidationError("drive: diagonal element given for " +
                            state_name({key.i, key.alpha}));
    }
    const DriveElementKey rev{key.i, key.alpha, key.f, key.alpha1};
    auto it = elements_.find(key);
    if (it != elements_.end() && it->second != v) {
      throw ValidationError("drive: conflicting entries for one element");
    }
    auto rit = elements_.find(rev);
    if (rit != elements_.end() && rit->second != std::conj(v)) {
      throw ValidationError("drive: elements violate Hermiticity");
    }
    elements_[key] = v;
    elements_[rev] = std::conj(v);
  }
}

std::complex<double> Drive::element(const Transition& tr) const {
  auto it = elements_.find({tr.f, tr.alpha1, tr.i, tr.alpha});
  return it == elements_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

std::vector<Transition> Drive::channels_from(const LevelSystem& sys,
                                             const BasisState& from) const {
  std::vector<Transition> out;
  for (const BasisState& to : sys.basis()) {
    if (to == from) continue;
    const Transition tr{from.n, from.alpha, to.n, to.alpha};
    if (element(tr) != std::complex<double>{0.0, 0.0}) out.push_back(tr);
  }
  return out;
}

void Schedule::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ValidationError("schedule: tau must be >= 0 and finite");
  }
  if (!(T >= tau) || !std::isfinite(T)) {
    throw ValidationError("schedule: T must be finite and tau must not exceed T");
  }
  if (N < 1) throw ValidationError("schedule: N must be >= 1");
  if (!std::isfinite(t0)) throw ValidationError("schedule: t0 must be finite");
}

int rwa_sign(const LevelSystem& sys, const Transition& tr) {
  const double w = omega_full(sys, tr);
  if (w > 0.0) return 1;
  if (w < 0.0) return -1;
  return tr.final() > tr.initial() ? 1 : -1;
}

double rwa_detuning(const LevelSystem& sys, const Drive& drive,
                    const Transition& tr) {
  return omega_full(sys, tr) - rwa_sign(sys, tr) * drive.omega_l();
}

std::complex<double> rwa_amplitude(const Drive& drive, const Transition& tr) {
  return 0.5 * drive.element(tr);
}

}  // namespace zeno
