#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "zeno/detector.hpp"
#include "zeno/system.hpp"

namespace zeno::oracle {

struct Options {
  int grid_points = 1024;
  double grid_half_width_sigmas = 8.0;
  // Phase advanced per substep at the fastest frequency in the segment;
  // the substep count also never drops below min_substeps per segment.
  double dt_factor = 0.01;
  int min_substeps = 100;
  bool parallel = true;  // distribute grid points across OpenMP threads
};

// Discretized pointer coordinate: q samples of |Phi(q)|^2 with weights
// normalized to sum to 1.
struct PointerGrid {
  std::vector<double> q;
  std::vector<double> weight;

  static PointerGrid gaussian(double sigma, int n_points,
                              double half_width_sigmas);
  int size() const { return static_cast<int>(q.size()); }
};

// System amplitudes conditioned on each pointer value. The pointer
// coordinate is conserved during the measurement, so the joint state stays
// factorized per grid point and each psi_k evolves independently.
struct JointState {
  PointerGrid grid;
  std::vector<Eigen::VectorXcd> psi;

  static JointState pure(PointerGrid grid, const LevelSystem& sys,
                         const BasisState& initial);
  // sum_k w_k |psi_k|^2
  double norm_squared() const;
  // sum_k w_k |psi_k[index(s)]|^2
  double population(const LevelSystem& sys, const BasisState& s) const;
};

// Hermitian drive matrix V(t) in the basis order of `sys`. RWA keeps the
// co-rotating branch of each element; FullCosine multiplies every element
// by cos(omega_L t).
Eigen::MatrixXcd drive_matrix(const LevelSystem& sys, const Drive& drive,
                              double t);

// Propagates every psi_k under (1 + lambda q_k) H0 + H1 + V(t) for
// t in [t0, t0 + tau].
void evolve_measurement(JointState& state, const LevelSystem& sys,
                        const Drive& drive, const DetectorModel& det,
                        double t0, double tau, const Options& opt = {});

// Propagates every psi_k under the shared H0 + H1 + V(t) for
// t in [t0, t0 + duration].
void evolve_free(JointState& state, const LevelSystem& sys, const Drive& drive,
                 double t0, double duration, const Options& opt = {});

// Accumulated propagator of the measurement-free segment; shared across
// grid points. Exposed for direct checks against closed-form solutions.
Eigen::MatrixXcd free_propagator(const LevelSystem& sys, const Drive& drive,
                                 double t0, double duration,
                                 const Options& opt = {});

// One full cycle from |i alpha> x |Phi|: measurement over [t0, t0+tau], free
// flight to t0+T, then the detector trace of the |f alpha1> population.
double jump_probability_exact(const LevelSystem& sys, const Drive& drive,
                              const DetectorModel& det, const Schedule& sched,
                              const Transition& tr, const Options& opt = {});

// Probability of remaining in `initial` after one cycle.
double survival_exact(const LevelSystem& sys, const Drive& drive,
                      const DetectorModel& det, const Schedule& sched,
                      const BasisState& initial, const Options& opt = {});

// Survival probability after each of the N cycles. Between cycles the
// detector is traced out (the per-point branches collapse into a system
// density matrix) and a fresh pointer state is attached.
std::vector<double> repeated_cycles(const LevelSystem& sys, const Drive& drive,
                                    const DetectorModel& det,
                                    const Schedule& sched,
                                    const BasisState& initial,
                                    const Options& opt = {});

}  // namespace zeno::oracle
