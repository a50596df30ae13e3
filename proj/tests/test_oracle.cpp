#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "zeno/oracle.hpp"
#include "zeno/perturbation.hpp"
#include "zeno/twolevel.hpp"

using std::complex;
using zeno::BasisState;
using zeno::DetectorModel;
using zeno::Drive;
using zeno::DriveConvention;
using zeno::FTable;
using zeno::LevelSystem;
using zeno::Schedule;
using zeno::Transition;
using zeno::ValidationError;
namespace oracle = zeno::oracle;

namespace {

const Transition kUp{0, 0, 1, 0};

// Reference point used across the regression checks: resonant weak drive
// with a strong measurement.
struct Reference {
  LevelSystem sys = zeno::two_level_system(1.0);
  Drive drive = zeno::two_level_drive({1e-3, 0.0}, 1.0);
  DetectorModel det = DetectorModel::gaussian(1.0, 1000.0);
  Schedule sched{0.01, 0.1, 1, 0.0};
};

double rabi_population(double v, double delta, double t) {
  const double rabi = std::hypot(v, delta);
  const double s = std::sin(0.5 * rabi * t);
  return v * v / (rabi * rabi) * s * s;
}

}  // namespace

TEST_CASE("pointer grid is normalized and symmetric") {
  const auto grid = oracle::PointerGrid::gaussian(1.0, 1024, 8.0);
  REQUIRE(grid.size() == 1024);
  double sum = 0.0, second = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    sum += grid.weight[k];
    second += grid.weight[k] * grid.q[k] * grid.q[k];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(second == doctest::Approx(1.0).epsilon(1e-8));
  for (int k = 0; k < grid.size(); ++k) {
    CHECK(grid.q[k] == -grid.q[grid.size() - 1 - k]);
    CHECK(grid.weight[k] == grid.weight[grid.size() - 1 - k]);
  }
  CHECK(std::abs(grid.q.front()) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("bad evolution options are rejected") {
  const Reference ref;
  oracle::Options opt;
  opt.grid_points = 1;
  CHECK_THROWS_AS(oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                 ref.sched, kUp, opt),
                  ValidationError);
  opt = {};
  opt.dt_factor = 0.0;
  CHECK_THROWS_AS(oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                 ref.sched, kUp, opt),
                  ValidationError);
  opt = {};
  opt.min_substeps = 0;
  CHECK_THROWS_AS(oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                 ref.sched, kUp, opt),
                  ValidationError);
}

TEST_CASE("tabulated pointers are not propagated") {
  const Reference ref;
  FTable t;
  t.x = {-1.0 - 1e-12, -1.0, 1.0, 1.0 + 1e-12};
  t.f = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  const auto tab = DetectorModel::tabulated(std::move(t), 1000.0);
  CHECK_THROWS_AS(oracle::jump_probability_exact(ref.sys, ref.drive, tab,
                                                 ref.sched, kUp),
                  ValidationError);
}

TEST_CASE("free propagator reproduces Rabi oscillations") {
  const double v = 0.05;
  const auto sys = zeno::two_level_system(1.0);

  const auto resonant = zeno::two_level_drive({v, 0.0}, 1.0);
  const auto u1 = oracle::free_propagator(sys, resonant, 0.0, 20.0);
  CHECK(std::norm(u1(1, 0)) ==
        doctest::Approx(rabi_population(v, 0.0, 20.0)).epsilon(1e-8));
  CHECK(std::abs(std::norm(u1(0, 0)) + std::norm(u1(1, 0)) - 1.0) < 1e-11);

  const auto detuned = zeno::two_level_drive({v, 0.0}, 0.97);
  const auto u2 = oracle::free_propagator(sys, detuned, 0.0, 40.0);
  CHECK(std::norm(u2(1, 0)) ==
        doctest::Approx(rabi_population(v, 0.03, 40.0)).epsilon(1e-8));
}

TEST_CASE("undriven states are preserved through a full cycle") {
  const auto sys = zeno::two_level_system(1.0);
  const Drive off({}, 1.0, DriveConvention::RWA);
  const auto det = DetectorModel::gaussian(1.0, 1000.0);

  auto state = oracle::JointState::pure(
      oracle::PointerGrid::gaussian(1.0, 256, 8.0), sys, {0, 0});
  oracle::evolve_measurement(state, sys, off, det, 0.0, 0.01);
  oracle::evolve_free(state, sys, off, 0.01, 0.09);
  CHECK(state.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state.population(sys, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state.population(sys, {1, 0}) < 1e-24);

  const Schedule sched{0.01, 0.1, 1, 0.0};
  CHECK(oracle::survival_exact(sys, off, det, sched, {0, 0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("detector off makes the cycle one free flight") {
  const auto sys = zeno::two_level_system(1.0);
  const auto drive = zeno::two_level_drive({0.05, 0.0}, 0.97);
  const auto off = DetectorModel::gaussian(1.0, 0.0);
  const Schedule sched{0.7, 2.0, 1, 0.0};

  const double w = oracle::jump_probability_exact(sys, drive, off, sched, kUp);
  const auto u = oracle::free_propagator(sys, drive, 0.0, sched.T);
  CHECK(w == doctest::Approx(std::norm(u(1, 0))).epsilon(1e-9));
}

TEST_CASE("zero-duration schedule is the identity") {
  const Reference ref;
  const Schedule nothing{0.0, 0.0, 1, 0.0};
  CHECK(oracle::jump_probability_exact(ref.sys, ref.drive, ref.det, nothing,
                                       kUp) == 0.0);
  CHECK(oracle::survival_exact(ref.sys, ref.drive, ref.det, nothing, {0, 0}) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("serial and threaded evolutions agree exactly") {
  const Reference ref;
  oracle::Options serial;
  serial.parallel = false;
  oracle::Options threaded;
  threaded.parallel = true;
  const double a = oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                  ref.sched, kUp, serial);
  const double b = oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                  ref.sched, kUp, threaded);
  CHECK(a == b);
}

TEST_CASE("regression: strong-measurement reference point") {
  const Reference ref;
  const double w = oracle::jump_probability_exact(ref.sys, ref.drive, ref.det,
                                                  ref.sched, kUp);
  CHECK(w == doctest::Approx(2.0871657053980725e-09).epsilon(1e-8));

  // One jump channel, so survival accounts for the whole loss.
  const double s =
      oracle::survival_exact(ref.sys, ref.drive, ref.det, ref.sched, {0, 0});
  CHECK(s + w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid refinement is already converged") {
  const Reference ref;
  const double base = oracle::jump_probability_exact(ref.sys, ref.drive,
                                                     ref.det, ref.sched, kUp);
  oracle::Options fine;
  fine.grid_points = 2048;
  const double refined = oracle::jump_probability_exact(
      ref.sys, ref.drive, ref.det, ref.sched, kUp, fine);
  CHECK(std::abs(refined - base) <= 1e-8 * std::abs(base));
}

TEST_CASE("time-step refinement is already converged") {
  const Reference ref;
  const double base = oracle::jump_probability_exact(ref.sys, ref.drive,
                                                     ref.det, ref.sched, kUp);
  oracle::Options fine;
  fine.dt_factor = 0.5 * oracle::Options{}.dt_factor;
  const double refined = oracle::jump_probability_exact(
      ref.sys, ref.drive, ref.det, ref.sched, kUp, fine);
  CHECK(std::abs(refined - base) <= 1e-9 * std::abs(base));
}

TEST_CASE("rotating-wave and full-cosine drives agree far off scale") {
  // omega T = 1000 suppresses the counter-rotating amplitude to ~0.2%.
  const auto sys = zeno::two_level_system(100.0);
  const auto det = DetectorModel::gaussian(1.0, 1.0);
  const Schedule sched{0.04, 10.0, 1, 0.0};
  const auto rwa = zeno::two_level_drive({1e-3, 0.0}, 100.0);
  const Drive cosine({{{1, 0, 0, 0}, {1e-3, 0.0}}}, 100.0,
                     DriveConvention::FullCosine);

  const double w_rwa =
      oracle::jump_probability_exact(sys, rwa, det, sched, kUp);
  const double w_cos =
      oracle::jump_probability_exact(sys, cosine, det, sched, kUp);
  CHECK(w_cos == doctest::Approx(w_rwa).epsilon(0.01));
}

TEST_CASE("start time matters only beyond the rotating wave") {
  const auto sys = zeno::two_level_system(100.0);
  const auto det = DetectorModel::gaussian(1.0, 1.0);
  const double quarter = M_PI / 200.0;

  const auto rwa = zeno::two_level_drive({0.05, 0.0}, 100.0);
  const Drive cosine({{{1, 0, 0, 0}, {0.05, 0.0}}}, 100.0,
                     DriveConvention::FullCosine);

  const Schedule s0{0.04, 0.5, 1, 0.0};
  Schedule s1 = s0;
  s1.t0 = quarter;

  const double r0 = oracle::jump_probability_exact(sys, rwa, det, s0, kUp);
  const double r1 = oracle::jump_probability_exact(sys, rwa, det, s1, kUp);
  CHECK(std::abs(r1 - r0) <= 1e-6 * r0);

  const double c0 = oracle::jump_probability_exact(sys, cosine, det, s0, kUp);
  const double c1 = oracle::jump_probability_exact(sys, cosine, det, s1, kUp);
  CHECK(std::abs(c1 - c0) > 1e-3 * c0);
}

TEST_CASE("repeated cycles decay log-linearly at the one-cycle rate") {
  const Reference ref;
  Schedule sched = ref.sched;
  sched.N = 10;

  const auto survivals = oracle::repeated_cycles(ref.sys, ref.drive, ref.det,
                                                 sched, {0, 0});
  REQUIRE(static_cast<int>(survivals.size()) == sched.N);

  const double one = oracle::survival_exact(ref.sys, ref.drive, ref.det,
                                            ref.sched, {0, 0});
  CHECK(survivals[0] == doctest::Approx(one).epsilon(1e-10));
  for (std::size_t k = 0; k < survivals.size(); ++k) {
    CHECK(survivals[k] > 0.0);
    CHECK(survivals[k] <= 1.0 + 1e-12);
    if (k > 0) CHECK(survivals[k] < survivals[k - 1]);
  }

  // Least-squares slope of log W_n vs n against the perturbative rate.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < survivals.size(); ++k) {
    const double x = static_cast<double>(k + 1);
    const double y = std::log(survivals[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(survivals.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double rate_exact = -slope / sched.T;
  const double rate_pert =
      decay_rate(ref.sys, ref.drive, ref.sched, ref.det, {0, 0});
  CHECK(rate_exact == doctest::Approx(rate_pert).epsilon(0.02));

  // Without a drive nothing decays.
  const Drive off({}, 1.0, DriveConvention::RWA);
  for (double s : oracle::repeated_cycles(ref.sys, off, ref.det, sched, {0, 0})) {
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}
