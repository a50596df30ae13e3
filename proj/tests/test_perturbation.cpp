#include <doctest.h>

#include <cmath>
#include <complex>

#include "brute_force.hpp"
#include "zeno/perturbation.hpp"

using std::complex;
using zeno::BasisState;
using zeno::DetectorModel;
using zeno::Drive;
using zeno::DriveConvention;
using zeno::LevelSystem;
using zeno::LookupError;
using zeno::Schedule;
using zeno::Transition;
using zeno::ValidationError;
using zeno::ValidityError;

namespace {

constexpr complex<double> kV{2e-3, 1e-3};
const Transition kUp{0, 0, 1, 0};
const Transition kDown{1, 0, 0, 0};

LevelSystem pair_split_by(double omega) {
  return LevelSystem({{0, -0.5 * omega}, {1, 0.5 * omega}});
}

Drive drive_at(complex<double> v, double omega_l,
               DriveConvention conv = DriveConvention::RWA) {
  return Drive({{{1, 0, 0, 0}, v}}, omega_l, conv);
}

double sine_form(complex<double> v, double dw, double dur) {
  if (dw == 0.0) return 0.25 * std::norm(v) * dur * dur;
  const double s = std::sin(0.5 * dw * dur);
  return std::norm(v) * s * s / (dw * dw);
}

}  // namespace

TEST_CASE("free-segment probability matches the explicit sine form") {
  const auto sys = pair_split_by(1.0);
  const Schedule sched{0.3, 2.0, 1, 0.0};
  for (double wl : {0.7, 1.0, 1.3}) {
    const auto drive = drive_at(kV, wl);
    const double dw = rwa_detuning(sys, drive, kUp);
    CHECK(w_free(sys, drive, sched, kUp) ==
          doctest::Approx(sine_form(kV, dw, sched.T - sched.tau))
              .epsilon(1e-13));
  }

  // Stable through the resonance.
  const auto near = drive_at(kV, 1.0 - 1e-8);
  CHECK(w_free(sys, near, sched, kUp) ==
        doctest::Approx(0.25 * std::norm(kV) * 1.7 * 1.7).epsilon(1e-10));

  // The reverse channel sees the opposite detuning, same magnitude.
  const auto drive = drive_at(kV, 0.7);
  CHECK(w_free(sys, drive, sched, kDown) ==
        doctest::Approx(w_free(sys, drive, sched, kUp)).epsilon(1e-13));

  // Independent 1D reduction check.
  CHECK(w_free(sys, drive, sched, kUp) ==
        doctest::Approx(bf::w_free_2d(0.5 * kV, rwa_detuning(sys, drive, kUp),
                                      sched.tau, sched.T, 4000))
            .epsilon(1e-10));
}

TEST_CASE("in-measurement probability matches the literal double integral") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 10.0);
  const auto drive = drive_at(kV, 0.9);
  const Schedule sched{0.8, 2.0, 1, 0.0};

  const double up = w_meas(sys, drive, sched, det, kUp);
  CHECK(up > 0.0);
  CHECK(up == doctest::Approx(bf::w_meas_2d(0.5 * kV,
                                            rwa_detuning(sys, drive, kUp),
                                            det.lambda() * omega_fi(sys, kUp),
                                            sched.tau, det, 2000))
                  .epsilon(1e-8));

  const double down = w_meas(sys, drive, sched, det, kDown);
  CHECK(down ==
        doctest::Approx(bf::w_meas_2d(0.5 * std::conj(kV),
                                      rwa_detuning(sys, drive, kDown),
                                      det.lambda() * omega_fi(sys, kDown),
                                      sched.tau, det, 2000))
            .epsilon(1e-8));
}

TEST_CASE("interference term matches the literal cross integral") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 10.0);
  const auto drive = drive_at(kV, 0.9);
  const Schedule sched{0.8, 2.0, 1, 0.0};

  const double up = w_interf(sys, drive, sched, det, kUp);
  CHECK(up != 0.0);
  CHECK(up ==
        doctest::Approx(bf::w_interf_2d(0.5 * kV,
                                        rwa_detuning(sys, drive, kUp),
                                        -det.lambda() * omega_fi(sys, kUp),
                                        sched.tau, sched.T, det, 2000))
            .epsilon(1e-8));

  const double down = w_interf(sys, drive, sched, det, kDown);
  CHECK(down ==
        doctest::Approx(bf::w_interf_2d(0.5 * std::conj(kV),
                                        rwa_detuning(sys, drive, kDown),
                                        -det.lambda() * omega_fi(sys, kDown),
                                        sched.tau, sched.T, det, 2000))
            .epsilon(1e-8));
}

TEST_CASE("detector off reduces the cycle to uninterrupted evolution") {
  const auto sys = pair_split_by(1.0);
  const auto off = DetectorModel::gaussian(1.0, 0.0);
  const auto drive = drive_at(kV, 0.9);
  const Schedule sched{0.8, 2.0, 1, 0.0};
  const double dw = rwa_detuning(sys, drive, kUp);

  // The window contributes as a free segment of length tau...
  CHECK(w_meas(sys, drive, sched, off, kUp) ==
        doctest::Approx(sine_form(kV, dw, sched.tau)).epsilon(1e-12));

  // ...and the three parts recombine into one segment of length T.
  const auto r = jump_probability(sys, drive, sched, off, kUp);
  CHECK(r.w_total == doctest::Approx(sine_form(kV, dw, sched.T)).epsilon(1e-12));
}

TEST_CASE("degenerate windows vanish") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 10.0);
  const auto drive = drive_at(kV, 0.9);

  const Schedule no_window{0.0, 2.0, 1, 0.0};
  auto r = jump_probability(sys, drive, no_window, det, kUp);
  CHECK(r.w_meas == 0.0);
  CHECK(r.w_interf == 0.0);
  CHECK(r.w_total == r.w_free);

  const Schedule all_window{2.0, 2.0, 1, 0.0};
  r = jump_probability(sys, drive, all_window, det, kUp);
  CHECK(r.w_free == 0.0);
  CHECK(r.w_interf == 0.0);
  CHECK(r.w_total == r.w_meas);
}

TEST_CASE("every component scales with the squared amplitude") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 10.0);
  const Schedule sched{0.8, 2.0, 1, 0.0};
  const auto r1 = jump_probability(sys, drive_at(kV, 0.9), sched, det, kUp);
  const auto r2 =
      jump_probability(sys, drive_at(2.0 * kV, 0.9), sched, det, kUp);
  CHECK(r2.w_free == doctest::Approx(4.0 * r1.w_free).epsilon(1e-12));
  CHECK(r2.w_meas == doctest::Approx(4.0 * r1.w_meas).epsilon(1e-12));
  CHECK(r2.w_interf == doctest::Approx(4.0 * r1.w_interf).epsilon(1e-12));
}

TEST_CASE("components always sum to the total") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 100.0);
  const Schedule sched{0.05, 0.4, 1, 0.0};
  const auto r = jump_probability(sys, drive_at(kV, 1.0), sched, det, kUp);
  CHECK(r.w_total == r.w_free + r.w_meas + r.w_interf);
}

TEST_CASE("survival sums the open channels") {
  const auto sys = LevelSystem({{0, -0.5}, {1, 0.5}, {2, 1.7}});
  const Drive drive({{{1, 0, 0, 0}, {1e-3, 0.0}}, {{2, 0, 0, 0}, {2e-3, 0.0}}},
                    1.0, DriveConvention::RWA);
  const auto det = DetectorModel::gaussian(1.0, 100.0);
  const Schedule sched{0.02, 0.5, 1, 0.0};

  const double w01 = jump_probability(sys, drive, sched, det, {0, 0, 1, 0}).w_total;
  const double w02 = jump_probability(sys, drive, sched, det, {0, 0, 2, 0}).w_total;
  CHECK(survival(sys, drive, sched, det, {0, 0}) ==
        doctest::Approx(1.0 - w01 - w02).epsilon(1e-14));
  CHECK(decay_rate(sys, drive, sched, det, {0, 0}) ==
        doctest::Approx((w01 + w02) / sched.T).epsilon(1e-14));

  // A state nothing couples to survives with certainty.
  const Drive narrow({{{1, 0, 0, 0}, {1e-3, 0.0}}}, 1.0, DriveConvention::RWA);
  CHECK(survival(sys, narrow, sched, det, {2, 0}) == 1.0);
  CHECK_THROWS_AS(survival(sys, drive, sched, det, {5, 0}), LookupError);
}

TEST_CASE("survival rejects totals beyond the perturbative regime") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 100.0);
  const Schedule sched{0.02, 2.0, 1, 0.0};
  CHECK_THROWS_AS(
      survival(sys, drive_at({10.0, 0.0}, 1.0), sched, det, {0, 0}),
      ValidityError);
}

TEST_CASE("repeated-cycle survival estimates") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 1000.0);
  // Jump probability ~2e-7 per cycle: large enough that the power law and
  // the exponential differ by more than double rounding near 1.
  const auto drive = drive_at({0.01, 0.0}, 1.0);
  const Schedule sched{0.01, 0.1, 100, 0.0};

  const double w = survival(sys, drive, sched, det, {0, 0});
  const double r = decay_rate(sys, drive, sched, det, {0, 0});
  const auto sn = survival_after_n(sys, drive, sched, det, {0, 0});
  CHECK(sn.power == std::pow(w, sched.N));
  CHECK(sn.exponential == std::exp(-r * sched.N * sched.T));
  // log(1-x) < -x, so the power law always sits below the exponential.
  CHECK(sn.power < sn.exponential);
  CHECK(sn.power == doctest::Approx(sn.exponential).epsilon(1e-6));

  CHECK_THROWS_AS(
      decay_rate(sys, drive, Schedule{0.0, 0.0, 1, 0.0}, det, {0, 0}),
      ValidationError);
}

TEST_CASE("full-cosine drive is rejected by the reduced formulas") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 100.0);
  const Schedule sched{0.02, 0.5, 1, 0.0};
  const auto drive = drive_at(kV, 1.0, DriveConvention::FullCosine);
  CHECK_THROWS_AS(w_free(sys, drive, sched, kUp), ValidationError);
  CHECK_THROWS_AS(w_meas(sys, drive, sched, det, kUp), ValidationError);
  CHECK_THROWS_AS(w_interf(sys, drive, sched, det, kUp), ValidationError);
  CHECK_THROWS_AS(survival(sys, drive, sched, det, {0, 0}), ValidationError);
}

TEST_CASE("cycle start time does not enter the rotating-wave result") {
  const auto sys = pair_split_by(1.0);
  const auto det = DetectorModel::gaussian(1.0, 100.0);
  const auto drive = drive_at(kV, 0.9);
  const Schedule at_zero{0.05, 0.4, 1, 0.0};
  const Schedule shifted{0.05, 0.4, 1, 17.3};
  const auto a = jump_probability(sys, drive, at_zero, det, kUp);
  const auto b = jump_probability(sys, drive, shifted, det, kUp);
  CHECK(a.w_free == b.w_free);
  CHECK(a.w_meas == b.w_meas);
  CHECK(a.w_interf == b.w_interf);
}
