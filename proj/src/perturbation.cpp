#include "zeno/perturbation.hpp"

#include <cmath>
#include <complex>

namespace zeno {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

void require_rwa(const Drive& drive) {
  if (drive.convention() != DriveConvention::RWA) {
    throw ValidationError(
        "perturbation: the full-cosine drive is supported by the oracle only");
  }
}

// Analytic Int_a^b exp(i w t) dt, stable at w -> 0.
complex<double> phase_integral(double w, double a, double b) {
  const double half = 0.5 * (b - a);
  return (b - a) * std::exp(kI * (0.5 * w * (a + b))) * quad::sinc(w * half);
}

}  // namespace

double w_free(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
              const Transition& tr) {
  require_rwa(drive);
  sched.validate();
  validate_transition(sys, tr);
  const complex<double> ve = rwa_amplitude(drive, tr);
  if (ve == complex<double>{0.0, 0.0}) return 0.0;
  const double dw = rwa_detuning(sys, drive, tr);
  const double dur = sched.T - sched.tau;
  const double s = quad::sinc(0.5 * dw * dur);
  return std::norm(ve) * dur * dur * s * s;
}

double w_meas(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
              const DetectorModel& det, const Transition& tr,
              const quad::Options& opt) {
  require_rwa(drive);
  sched.validate();
  validate_transition(sys, tr);
  const complex<double> ve = rwa_amplitude(drive, tr);
  if (ve == complex<double>{0.0, 0.0} || sched.tau == 0.0) return 0.0;
  const double dw = rwa_detuning(sys, drive, tr);
  const double wfi = omega_fi(sys, tr);
  const double tau = sched.tau;

  // The [0,tau]^2 double integral depends on t1 - t2 only; reduce it to
  // 2 Re Int_0^tau (tau - s) K(s) ds with K(s) = e^{i dw s} F(lambda wfi s).
  const auto kernel = [&](double s) {
    return (tau - s) * std::exp(kI * (dw * s)) *
           det.characteristic_function(det.lambda() * wfi * s);
  };
  const auto cuts = det.kernel_breakpoints(det.lambda() * wfi, tau);
  const auto res = quad::integrate(kernel, 0.0, tau, opt, cuts);
  return 2.0 * std::norm(ve) * res.value.real();
}

double w_interf(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                const DetectorModel& det, const Transition& tr,
                const quad::Options& opt) {
  require_rwa(drive);
  sched.validate();
  validate_transition(sys, tr);
  const complex<double> ve = rwa_amplitude(drive, tr);
  if (ve == complex<double>{0.0, 0.0}) return 0.0;
  const double tau = sched.tau;
  if (tau == 0.0 || tau == sched.T) return 0.0;
  const double dw = rwa_detuning(sys, drive, tr);
  const double wif = -omega_fi(sys, tr);

  // F's boundary layer sits at t1 near tau.
  std::vector<double> cuts;
  for (double s : det.kernel_breakpoints(det.lambda() * wif, tau)) {
    cuts.push_back(tau - s);
  }
  const auto a_kernel = [&](double t1) {
    return std::exp(kI * (dw * t1)) *
           det.characteristic_function(det.lambda() * wif * (tau - t1));
  };
  const complex<double> a = quad::integrate(a_kernel, 0.0, tau, opt, cuts).value;
  const complex<double> b = phase_integral(-dw, tau, sched.T);
  return 2.0 * std::norm(ve) * (a * b).real();
}

JumpResult jump_probability(const LevelSystem& sys, const Drive& drive,
                            const Schedule& sched, const DetectorModel& det,
                            const Transition& tr, const quad::Options& opt) {
  JumpResult r;
  r.w_free = w_free(sys, drive, sched, tr);
  r.w_meas = w_meas(sys, drive, sched, det, tr, opt);
  r.w_interf = w_interf(sys, drive, sched, det, tr, opt);
  r.w_total = r.w_free + r.w_meas + r.w_interf;
  return r;
}

double survival(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                const DetectorModel& det, const BasisState& initial,
                const quad::Options& opt) {
  if (!sys.has_state(initial)) {
    throw LookupError("survival: unknown initial state");
  }
  double sum = 0.0;
  for (const Transition& tr : drive.channels_from(sys, initial)) {
    sum += jump_probability(sys, drive, sched, det, tr, opt).w_total;
  }
  const double w = 1.0 - sum;
  if (w < 0.0) {
    throw ValidityError(
        "survival: negative survival probability; parameters are outside the "
        "second-order regime");
  }
  return w;
}

double decay_rate(const LevelSystem& sys, const Drive& drive, const Schedule& sched,
                  const DetectorModel& det, const BasisState& initial,
                  const quad::Options& opt) {
  sched.validate();
  if (!(sched.T > 0.0)) {
    throw ValidationError("decay_rate: T must be > 0");
  }
  double sum = 0.0;
  for (const Transition& tr : drive.channels_from(sys, initial)) {
    sum += jump_probability(sys, drive, sched, det, tr, opt).w_total;
  }
  return sum / sched.T;
}

SurvivalAfterN survival_after_n(const LevelSystem& sys, const Drive& drive,
                                const Schedule& sched, const DetectorModel& det,
                                const BasisState& initial,
                                const quad::Options& opt) {
  const double w = survival(sys, drive, sched, det, initial, opt);
  const double r = decay_rate(sys, drive, sched, det, initial, opt);
  return {std::pow(w, sched.N), std::exp(-r * sched.N * sched.T)};
}

}  // namespace zeno
