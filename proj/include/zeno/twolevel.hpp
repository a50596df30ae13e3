#pragma once

#include <complex>

#include "zeno/detector.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/system.hpp"

namespace zeno {

// Resonantly driven pair of levels split by omega > 0, drive matrix element v,
// laser frequency omega_L. Energies are placed at -omega/2 and +omega/2 so the
// upward transition frequency equals omega.
struct TwoLevelParams {
  double omega = 0.0;
  std::complex<double> v{0.0, 0.0};
  double omega_l = 0.0;
  Schedule sched;

  // Detuning of the laser from the transition.
  double delta() const { return omega - omega_l; }
  void validate() const;
};

// Builds the equivalent generic description of the same problem.
LevelSystem two_level_system(double omega);
Drive two_level_drive(std::complex<double> v, double omega_l);

// Jump probability with the detector off, closed form.
double wf_closed(const TwoLevelParams& p);

// Measurement-window contribution; single quadrature over the window.
double wm_semiclosed(const TwoLevelParams& p, const DetectorModel& det,
                     const quad::Options& opt = {});

// Interference of the two windows; quadrature over [0, tau] times an
// analytic phase factor for the free part.
double wint_semiclosed(const TwoLevelParams& p, const DetectorModel& det,
                       const quad::Options& opt = {});

// Strong-measurement expansion of the total jump probability.
struct ApproxResult {
  double ideal = 0.0;       // |v|^2 T^2 / 4, frequent ideal measurements
  double correction = 0.0;  // |v|^2 (T/2) (1/(Lambda omega) - tau)
  double total = 0.0;
};
ApproxResult w_result_approx(const TwoLevelParams& p, const DetectorModel& det);

}  // namespace zeno
