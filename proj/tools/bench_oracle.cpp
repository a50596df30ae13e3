#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "zeno/oracle.hpp"
#include "zeno/twolevel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run_once(const zeno::LevelSystem& sys, const zeno::Drive& drive,
                const zeno::DetectorModel& det, const zeno::Schedule& sched,
                bool parallel, int grid_points, double* seconds) {
  zeno::oracle::Options opt;
  opt.parallel = parallel;
  opt.grid_points = grid_points;
  const zeno::Transition tr{0, 0, 1, 0};
  const auto start = std::chrono::steady_clock::now();
  const double w =
      zeno::oracle::jump_probability_exact(sys, drive, det, sched, tr, opt);
  const auto stop = std::chrono::steady_clock::now();
  *seconds = std::chrono::duration<double>(stop - start).count();
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timing of the per-grid-point propagation, serial vs OpenMP"};
  double lambda = 1000.0;
  double tau = 0.01;
  double t_period = 0.1;
  int grid_points = 1024;
  int repeat = 3;
  app.add_option("--lambda", lambda, "Measurement strength");
  app.add_option("--tau", tau, "Measurement duration");
  app.add_option("--T", t_period, "Cycle period");
  app.add_option("--grid", grid_points, "Pointer grid points");
  app.add_option("--repeat", repeat, "Timing repetitions (best is reported)");
  CLI11_PARSE(app, argc, argv);

  const auto sys = zeno::two_level_system(1.0);
  const auto drive = zeno::two_level_drive({1e-3, 0.0}, 1.0);
  const auto det = zeno::DetectorModel::gaussian(1.0, lambda);
  zeno::Schedule sched;
  sched.tau = tau;
  sched.T = t_period;

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in\n");
#endif
  std::printf("grid: %d points, lambda = %g, tau = %g, T = %g\n", grid_points,
              lambda, tau, t_period);

  double best_serial = 1e300, best_parallel = 1e300;
  double w_serial = 0.0, w_parallel = 0.0;
  for (int r = 0; r < repeat; ++r) {
    double s = 0.0;
    w_serial = run_once(sys, drive, det, sched, false, grid_points, &s);
    best_serial = std::min(best_serial, s);
    w_parallel = run_once(sys, drive, det, sched, true, grid_points, &s);
    best_parallel = std::min(best_parallel, s);
  }

  std::printf("serial:   %.3f s   W = %.16e\n", best_serial, w_serial);
  std::printf("parallel: %.3f s   W = %.16e\n", best_parallel, w_parallel);
  std::printf("speedup:  %.2fx\n", best_serial / best_parallel);
  if (w_serial != w_parallel) {
    std::printf("MISMATCH: serial and parallel results differ\n");
    return 1;
  }
  std::printf("results identical\n");
  return 0;
}
