#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

struct Level {
  int n;
  double energy;  // E_n, angular-frequency units (hbar = 1)
};

struct AuxLevel {
  int n;
  int alpha;
  double e1;  // E_1(n, alpha)
};

struct BasisState {
  int n = 0;
  int alpha = 0;
  auto operator<=>(const BasisState&) const = default;
};

// Discrete spectrum of H0 plus the commuting H1 quantum numbers. When the
// aux list is empty, H1 = 0 and every level carries a single implicit
// alpha = 0 state.
class LevelSystem {
 public:
  explicit LevelSystem(std::vector<Level> levels, std::vector<AuxLevel> aux = {});

  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<AuxLevel>& aux() const { return aux_; }
  bool has_aux() const { return !aux_.empty(); }

  double energy(int n) const;
  double aux_energy(int n, int alpha) const;  // 0 when the aux list is empty

  // Basis states in deterministic (n, alpha) order.
  const std::vector<BasisState>& basis() const { return basis_; }
  bool has_state(const BasisState& s) const;
  int state_index(const BasisState& s) const;

 private:
  std::vector<Level> levels_;
  std::vector<AuxLevel> aux_;
  std::vector<BasisState> basis_;
  std::map<int, double> energy_by_n_;
  std::map<std::pair<int, int>, double> e1_by_state_;
};

struct Transition {
  int i = 0;
  int alpha = 0;
  int f = 0;
  int alpha1 = 0;

  BasisState initial() const { return {i, alpha}; }
  BasisState final() const { return {f, alpha1}; }
  Transition reversed() const { return {f, alpha1, i, alpha}; }
};

void validate_transition(const LevelSystem& sys, const Transition& tr);

// omega_fi = E_f - E_i.
double omega_fi(const LevelSystem& sys, const Transition& tr);

// omega_{f alpha1, i alpha} = omega_fi + E1(f, alpha1) - E1(i, alpha).
double omega_full(const LevelSystem& sys, const Transition& tr);

enum class DriveConvention { RWA, FullCosine };

struct DriveElementKey {
  int f = 0;
  int alpha1 = 0;
  int i = 0;
  int alpha = 0;
  auto operator<=>(const DriveElementKey&) const = default;
};

// Periodic perturbation V(t): matrix elements v_{f alpha1, i alpha} of the
// carrier-frequency drive. Hermiticity is enforced at construction: a key
// given in one direction fills in its conjugate, and conflicting entries for
// the same pair are rejected.
class Drive {
 public:
  Drive(const std::vector<std::pair<DriveElementKey, std::complex<double>>>& elements,
        double omega_l, DriveConvention convention);

  double omega_l() const { return omega_l_; }
  DriveConvention convention() const { return convention_; }

  std::complex<double> element(const Transition& tr) const;  // 0 when absent
  const std::map<DriveElementKey, std::complex<double>>& elements() const {
    return elements_;
  }

  // Final states coupled to `from` by a nonzero element, in basis order.
  std::vector<Transition> channels_from(const LevelSystem& sys,
                                        const BasisState& from) const;

 private:
  std::map<DriveElementKey, std::complex<double>> elements_;
  double omega_l_;
  DriveConvention convention_;
};

// Measurement of duration tau followed by free evolution until T, repeated
// N times starting at t0.
struct Schedule {
  double tau = 0.0;
  double T = 0.0;
  int N = 1;
  double t0 = 0.0;

  void validate() const;
};

// Rotating-wave branch kept for a transition: +1 when the carrier beats
// against an upward jump, -1 for a downward one. Degenerate pairs fall back
// to basis order so that a transition and its reverse always get opposite
// signs.
int rwa_sign(const LevelSystem& sys, const Transition& tr);

// Detuning of the kept branch: omega_full - sign * omega_L.
double rwa_detuning(const LevelSystem& sys, const Drive& drive,
                    const Transition& tr);

// Effective jump amplitude v/2 of the rotating-wave drive.
std::complex<double> rwa_amplitude(const Drive& drive, const Transition& tr);

}  // namespace zeno
