#pragma once

// Test-side reference integrators, deliberately independent of the library's
// quadrature: plain composite Simpson on the literal double integrals that
// the engine reduces analytically.

#include <complex>
#include <functional>

#include "zeno/detector.hpp"

namespace bf {

using cplx = std::complex<double>;

inline cplx simpson(const std::function<cplx(double)>& f, double a, double b,
                    int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  cplx sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * (h / 3.0);
}

inline cplx simpson2d(const std::function<cplx(double, double)>& f, double a1,
                      double b1, double a2, double b2, int n) {
  return simpson(
      [&](double t1) {
        return simpson([&](double t2) { return f(t1, t2); }, a2, b2, n);
      },
      a1, b1, n);
}

// |integral of v_eff e^{i dw t} over the free segment|^2, no reduction.
inline double w_free_2d(cplx v_eff, double dw, double tau, double t_total,
                        int n) {
  const cplx kI{0.0, 1.0};
  const cplx amp = simpson(
      [&](double t) { return std::exp(kI * (dw * t)); }, 0.0, t_total - tau, n);
  return std::norm(v_eff) * std::norm(amp);
}

// Literal [0, tau]^2 double integral with the pointer kernel; the result is
// real because the kernel is Hermitian under t1 <-> t2.
inline double w_meas_2d(cplx v_eff, double dw, double lambda_wfi, double tau,
                        const zeno::DetectorModel& det, int n) {
  const cplx kI{0.0, 1.0};
  const cplx val = simpson2d(
      [&](double t1, double t2) {
        return std::exp(kI * (dw * (t1 - t2))) *
               det.characteristic_function(lambda_wfi * (t1 - t2));
      },
      0.0, tau, 0.0, tau, n);
  return std::norm(v_eff) * val.real();
}

// Literal 2 Re of the [0,tau] x [tau,T] cross integral with F evaluated at
// lambda*omega_if*(tau - t1).
inline double w_interf_2d(cplx v_eff, double dw, double lambda_wif, double tau,
                          double t_total, const zeno::DetectorModel& det,
                          int n) {
  const cplx kI{0.0, 1.0};
  const cplx val = simpson2d(
      [&](double t1, double t2) {
        return std::exp(kI * (dw * (t1 - t2))) *
               det.characteristic_function(lambda_wif * (tau - t1));
      },
      0.0, tau, tau, t_total, n);
  return 2.0 * std::norm(v_eff) * val.real();
}

}  // namespace bf
