#include "zeno/twolevel.hpp"

#include <cmath>
#include <complex>

namespace zeno {

namespace {
using std::complex;
constexpr complex<double> kI{0.0, 1.0};
}  // namespace

void TwoLevelParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("twolevel: omega must be > 0");
  }
  if (!(omega_l >= 0.0) || !std::isfinite(omega_l)) {
    throw ValidationError("twolevel: omega_l must be >= 0");
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ValidationError("twolevel: v must be finite");
  }
  sched.validate();
}

LevelSystem two_level_system(double omega) {
  if (!(omega > 0.0)) throw ValidationError("twolevel: omega must be > 0");
  return LevelSystem({{0, -0.5 * omega}, {1, 0.5 * omega}});
}

Drive two_level_drive(std::complex<double> v, double omega_l) {
  return Drive({{DriveElementKey{1, 0, 0, 0}, v}}, omega_l,
               DriveConvention::RWA);
}

double wf_closed(const TwoLevelParams& p) {
  p.validate();
  const double dur = p.sched.T - p.sched.tau;
  const double s = quad::sinc(0.5 * p.delta() * dur);
  return 0.25 * std::norm(p.v) * dur * dur * s * s;
}

double wm_semiclosed(const TwoLevelParams& p, const DetectorModel& det,
                     const quad::Options& opt) {
  p.validate();
  const double tau = p.sched.tau;
  if (tau == 0.0 || p.v == std::complex<double>{0.0, 0.0}) return 0.0;
  const double dw = p.delta();
  const double lw = det.lambda() * p.omega;
  const auto kernel = [&](double t) {
    return (1.0 - t / tau) * std::exp(kI * (dw * t)) *
           det.characteristic_function(lw * t);
  };
  const auto cuts = det.kernel_breakpoints(lw, tau);
  const auto res = quad::integrate(kernel, 0.0, tau, opt, cuts);
  return 0.5 * std::norm(p.v) * tau * res.value.real();
}

double wint_semiclosed(const TwoLevelParams& p, const DetectorModel& det,
                       const quad::Options& opt) {
  p.validate();
  const double tau = p.sched.tau;
  const double dur = p.sched.T - tau;
  if (tau == 0.0 || dur == 0.0 || p.v == std::complex<double>{0.0, 0.0}) {
    return 0.0;
  }
  const double dw = p.delta();
  const double lw = det.lambda() * p.omega;
  std::vector<double> cuts;
  for (double s : det.kernel_breakpoints(lw, tau)) cuts.push_back(tau - s);
  const auto a_kernel = [&](double t) {
    return std::exp(kI * (dw * t)) * det.characteristic_function(lw * (t - tau));
  };
  const std::complex<double> a =
      quad::integrate(a_kernel, 0.0, tau, opt, cuts).value;
  const std::complex<double> b = dur *
                                 std::exp(-kI * (0.5 * dw * (p.sched.T + tau))) *
                                 quad::sinc(0.5 * dw * dur);
  return 0.5 * std::norm(p.v) * (a * b).real();
}

ApproxResult w_result_approx(const TwoLevelParams& p, const DetectorModel& det) {
  p.validate();
  const double lam_w = det.lambda_eff() * p.omega;
  if (!(lam_w > 0.0)) {
    throw ValidityError("twolevel: 1/(Lambda omega) requires Lambda omega > 0");
  }
  ApproxResult r;
  const double v2 = std::norm(p.v);
  r.ideal = 0.25 * v2 * p.sched.T * p.sched.T;
  r.correction = 0.5 * v2 * p.sched.T * (1.0 / lam_w - p.sched.tau);
  r.total = r.ideal + r.correction;
  return r;
}

}  // namespace zeno
