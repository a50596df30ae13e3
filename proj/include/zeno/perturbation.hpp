#pragma once

#include "zeno/detector.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/system.hpp"

namespace zeno {

// Second-order jump probability for one measurement-plus-free-evolution
// cycle, split into its free, in-measurement, and interference parts.
struct JumpResult {
  double w_free = 0.0;
  double w_meas = 0.0;
  double w_interf = 0.0;
  double w_total = 0.0;
};

// Probability of the jump during the free-evolution part of the cycle.
double w_free(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
              const Transition& tr);

// Probability of the jump during the measurement; the pointer enters through
// F(lambda * omega_fi * (t1 - t2)).
double w_meas(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
              const DetectorModel& det, const Transition& tr,
              const quad::Options& opt = {});

// Interference between the in-measurement and free-evolution amplitudes.
double w_interf(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                const DetectorModel& det, const Transition& tr,
                const quad::Options& opt = {});

JumpResult jump_probability(const LevelSystem& sys, const Drive& drive,
                            const Schedule& sched, const DetectorModel& det,
                            const Transition& tr, const quad::Options& opt = {});

// 1 - sum of jump probabilities over every drive-coupled channel.
double survival(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                const DetectorModel& det, const BasisState& initial,
                const quad::Options& opt = {});

// Measurement-modified decay rate R = sum_channels W / T.
double decay_rate(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                  const DetectorModel& det, const BasisState& initial,
                  const quad::Options& opt = {});

struct SurvivalAfterN {
  double power;        // survival^N
  double exponential;  // exp(-R N T)
};

SurvivalAfterN survival_after_n(const LevelSystem& sys, const Drive& drive,
                                const Schedule& sched, const DetectorModel& det,
                                const BasisState& initial,
                                const quad::Options& opt = {});

}  // namespace zeno
