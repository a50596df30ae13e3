#include "zeno/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "zeno/quadrature.hpp"

namespace zeno::oracle {

namespace {

using std::complex;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr complex<double> kI{0.0, 1.0};
constexpr double kSqrt3 = 1.7320508075688772;

// Fourth-order commutator-free scheme on Gauss nodes c1, c2:
// U(h) = exp(-ih(b H1 + a H2)) exp(-ih(a H1 + b H2)), H_j = H(t + c_j h).
constexpr double kC1 = 0.5 - kSqrt3 / 6.0;
constexpr double kC2 = 0.5 + kSqrt3 / 6.0;
constexpr double kA = 0.25 + kSqrt3 / 6.0;
constexpr double kB = 0.25 - kSqrt3 / 6.0;

constexpr int kBlock = 4096;          // substeps per drive-matrix batch
constexpr long kMaxSubsteps = 20000000;

void validate_options(const Options& opt) {
  if (opt.grid_points < 2) {
    throw ValidationError("oracle: grid_points must be >= 2");
  }
  if (!(opt.grid_half_width_sigmas > 0.0)) {
    throw ValidationError("oracle: grid_half_width_sigmas must be > 0");
  }
  if (!(opt.dt_factor > 0.0) || !std::isfinite(opt.dt_factor)) {
    throw ValidationError("oracle: dt_factor must be > 0");
  }
  if (opt.min_substeps < 1) {
    throw ValidationError("oracle: min_substeps must be >= 1");
  }
}

void require_gaussian(const DetectorModel& det) {
  if (det.kind() != DetectorModel::Kind::GaussianPointer) {
    throw ValidationError(
        "oracle: only the Gaussian pointer defines a coordinate distribution; "
        "tabulated characteristic functions are not supported here");
  }
}

struct DriveTerm {
  int row;
  int col;
  complex<double> amp;
  double phase_rate;  // RWA: kept-branch frequency, signed; FullCosine: unused
};

std::vector<DriveTerm> drive_terms(const LevelSystem& sys, const Drive& drive) {
  std::vector<DriveTerm> terms;
  terms.reserve(drive.elements().size());
  for (const auto& [key, v] : drive.elements()) {
    const Transition tr{key.i, key.alpha, key.f, key.alpha1};
    DriveTerm t;
    t.row = sys.state_index({key.f, key.alpha1});
    t.col = sys.state_index({key.i, key.alpha});
    if (drive.convention() == DriveConvention::RWA) {
      t.amp = 0.5 * v;
      t.phase_rate = rwa_sign(sys, tr) * drive.omega_l();
    } else {
      t.amp = v;
      t.phase_rate = 0.0;
    }
    terms.push_back(t);
  }
  return terms;
}

void build_drive(const std::vector<DriveTerm>& terms, DriveConvention conv,
                 double omega_l, double t, MatrixXcd& out) {
  out.setZero();
  if (conv == DriveConvention::RWA) {
    for (const DriveTerm& dt : terms) {
      out(dt.row, dt.col) += dt.amp * std::exp(-kI * (dt.phase_rate * t));
    }
  } else {
    const double c = std::cos(omega_l * t);
    for (const DriveTerm& dt : terms) {
      out(dt.row, dt.col) += dt.amp * c;
    }
  }
}

double drive_max_abs(const Drive& drive) {
  double m = 0.0;
  for (const auto& [key, v] : drive.elements()) m = std::max(m, std::abs(v));
  return m;
}

double segment_scale(const Drive& drive, double diag_bound) {
  const double s =
      std::max({diag_bound, drive.omega_l(), drive_max_abs(drive)});
  if (!std::isfinite(s)) {
    throw IntegrationError("oracle: non-finite frequency scale");
  }
  return s;
}

long substep_count(double duration, double scale, const Options& opt) {
  double ideal = 0.0;
  if (scale > 0.0) ideal = duration * scale / opt.dt_factor;
  if (ideal > static_cast<double>(kMaxSubsteps)) {
    throw IntegrationError("oracle: substep budget exceeded; lambda or the "
                           "segment duration is too large");
  }
  return std::max<long>(opt.min_substeps,
                        static_cast<long>(std::ceil(ideal)));
}

// exp(-i A) for Hermitian A = [[p, r], [conj(r), q]], closed form.
struct U2 {
  complex<double> u00, u01, u10, u11;
};

inline U2 exp_neg_i_2(double p, double q, complex<double> r) {
  const double c = 0.5 * (p + q);
  const double d = 0.5 * (p - q);
  const double m = std::sqrt(d * d + std::norm(r));
  const double s = quad::sinc(m);  // sin(m)/m, exact limit at m = 0
  const double cm = std::cos(m);
  const complex<double> ph = std::exp(-kI * c);
  U2 u;
  u.u00 = ph * complex<double>(cm, -d * s);
  u.u11 = ph * complex<double>(cm, d * s);
  u.u01 = ph * (-kI * s * r);
  u.u10 = ph * (-kI * s * std::conj(r));
  return u;
}

inline void apply_u(const U2& u, VectorXcd& v) {
  const complex<double> a = v(0), b = v(1);
  v(0) = u.u00 * a + u.u01 * b;
  v(1) = u.u10 * a + u.u11 * b;
}

inline void apply_u(const U2& u, MatrixXcd& m) {
  for (int j = 0; j < m.cols(); ++j) {
    const complex<double> a = m(0, j), b = m(1, j);
    m(0, j) = u.u00 * a + u.u01 * b;
    m(1, j) = u.u10 * a + u.u11 * b;
  }
}

MatrixXcd exp_neg_i_n(const MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a);
  const VectorXd& ev = es.eigenvalues();
  VectorXcd phases(ev.size());
  for (int j = 0; j < ev.size(); ++j) phases(j) = std::exp(-kI * ev(j));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

template <class Obj>
void apply_u(const MatrixXcd& u, Obj& obj, Obj& scratch) {
  scratch.noalias() = u * obj;
  obj.swap(scratch);
}

VectorXd diag_e0(const LevelSystem& sys) {
  const auto& basis = sys.basis();
  VectorXd e(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) e(i) = sys.energy(basis[i].n);
  return e;
}

VectorXd diag_e1(const LevelSystem& sys) {
  const auto& basis = sys.basis();
  VectorXd e(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) {
    e(i) = sys.aux_energy(basis[i].n, basis[i].alpha);
  }
  return e;
}

// Advances every per-grid-point object through [t_start, t_start + duration]
// under (1 + lambda q_k) H0 + H1 + V(t). The drive matrices of each substep
// are shared across grid points; the per-point work is independent, so the
// k loop may be parallel. Objects are system vectors or propagator matrices.
template <class Obj>
void measurement_segment(std::vector<Obj>& objs, const PointerGrid& grid,
                         const LevelSystem& sys, const Drive& drive,
                         double lambda, double t_start, double duration,
                         const Options& opt) {
  if (duration == 0.0 || objs.empty()) return;
  const int n = static_cast<int>(sys.basis().size());
  const int n_points = grid.size();
  const VectorXd e0 = diag_e0(sys);
  const VectorXd e1 = diag_e1(sys);
  const double qabs = std::max(std::abs(grid.q.front()), std::abs(grid.q.back()));
  const double diag_bound = (1.0 + std::abs(lambda) * qabs) *
                                e0.cwiseAbs().maxCoeff() +
                            e1.cwiseAbs().maxCoeff();
  const long steps = substep_count(duration, segment_scale(drive, diag_bound), opt);
  const double h = duration / static_cast<double>(steps);

  const auto terms = drive_terms(sys, drive);
  std::vector<MatrixXcd> w1(kBlock), w2(kBlock);
  MatrixXcd v1(n, n), v2(n, n);
  const bool par = opt.parallel;

  for (long s0 = 0; s0 < steps; s0 += kBlock) {
    const int nb = static_cast<int>(std::min<long>(kBlock, steps - s0));
    for (int s = 0; s < nb; ++s) {
      const double tb = t_start + static_cast<double>(s0 + s) * h;
      build_drive(terms, drive.convention(), drive.omega_l(), tb + kC1 * h, v1);
      build_drive(terms, drive.convention(), drive.omega_l(), tb + kC2 * h, v2);
      w1[s] = kA * v1 + kB * v2;
      w2[s] = kB * v1 + kA * v2;
    }
#pragma omp parallel for schedule(static) if (par)
    for (int k = 0; k < n_points; ++k) {
      const VectorXd dk = (1.0 + lambda * grid.q[k]) * e0 + e1;
      if (n == 2) {
        const double d0 = 0.5 * h * dk(0);
        const double d1 = 0.5 * h * dk(1);
        for (int s = 0; s < nb; ++s) {
          apply_u(exp_neg_i_2(d0 + h * w1[s](0, 0).real(),
                              d1 + h * w1[s](1, 1).real(), h * w1[s](0, 1)),
                  objs[k]);
          apply_u(exp_neg_i_2(d0 + h * w2[s](0, 0).real(),
                              d1 + h * w2[s](1, 1).real(), h * w2[s](0, 1)),
                  objs[k]);
        }
      } else {
        MatrixXcd a(n, n);
        Obj scratch = objs[k];
        const VectorXcd dh = (0.5 * h * dk).cast<complex<double>>();
        for (int s = 0; s < nb; ++s) {
          a = h * w1[s];
          a.diagonal() += dh;
          apply_u(exp_neg_i_n(a), objs[k], scratch);
          a = h * w2[s];
          a.diagonal() += dh;
          apply_u(exp_neg_i_n(a), objs[k], scratch);
        }
      }
    }
  }
}

// Accumulated propagator over [t_start, t_start + duration] with the
// detector off; identical for every grid point.
MatrixXcd free_segment_propagator(const LevelSystem& sys, const Drive& drive,
                                  double t_start, double duration,
                                  const Options& opt) {
  const int n = static_cast<int>(sys.basis().size());
  MatrixXcd u = MatrixXcd::Identity(n, n);
  if (duration == 0.0) return u;
  const VectorXd d = diag_e0(sys) + diag_e1(sys);
  const double diag_bound = d.cwiseAbs().maxCoeff();
  const long steps = substep_count(duration, segment_scale(drive, diag_bound), opt);
  const double h = duration / static_cast<double>(steps);

  const auto terms = drive_terms(sys, drive);
  const VectorXcd dh = (0.5 * h * d).cast<complex<double>>();
  MatrixXcd v1(n, n), v2(n, n), a(n, n), scratch(n, n);
  for (long s = 0; s < steps; ++s) {
    const double tb = t_start + static_cast<double>(s) * h;
    build_drive(terms, drive.convention(), drive.omega_l(), tb + kC1 * h, v1);
    build_drive(terms, drive.convention(), drive.omega_l(), tb + kC2 * h, v2);
    a = h * (kA * v1 + kB * v2);
    a.diagonal() += dh;
    apply_u(exp_neg_i_n(a), u, scratch);
    a = h * (kB * v1 + kA * v2);
    a.diagonal() += dh;
    apply_u(exp_neg_i_n(a), u, scratch);
  }
  return u;
}

void check_norm_drift(double before, double after, const char* where) {
  if (!(before > 0.0) || !std::isfinite(after)) {
    throw IntegrationError(std::string(where) + ": state norm lost");
  }
  if (std::abs(std::sqrt(after / before) - 1.0) > 1e-10) {
    throw IntegrationError(std::string(where) +
                           ": norm drift exceeds 1e-10; reduce dt_factor");
  }
}

}  // namespace

PointerGrid PointerGrid::gaussian(double sigma, int n_points,
                                  double half_width_sigmas) {
  if (!(sigma > 0.0)) throw ValidationError("pointer grid: sigma must be > 0");
  if (n_points < 2) throw ValidationError("pointer grid: need >= 2 points");
  if (!(half_width_sigmas > 0.0)) {
    throw ValidationError("pointer grid: half width must be > 0");
  }
  PointerGrid g;
  g.q.resize(n_points);
  g.weight.resize(n_points);
  const double w = half_width_sigmas * sigma;
  const double dq = 2.0 * w / static_cast<double>(n_points - 1);
  // Mirror the left half so the grid is symmetric to the last bit.
  for (int k = 0; k < n_points / 2; ++k) {
    g.q[k] = -w + dq * static_cast<double>(k);
    g.q[n_points - 1 - k] = -g.q[k];
  }
  if (n_points % 2 == 1) g.q[n_points / 2] = 0.0;
  double sum = 0.0;
  for (int k = 0; k < n_points; ++k) {
    g.weight[k] = std::exp(-0.5 * g.q[k] * g.q[k] / (sigma * sigma));
    sum += g.weight[k];
  }
  for (double& wk : g.weight) wk /= sum;
  return g;
}

JointState JointState::pure(PointerGrid grid, const LevelSystem& sys,
                            const BasisState& initial) {
  const int idx = sys.state_index(initial);
  JointState st;
  st.grid = std::move(grid);
  VectorXcd psi0 = VectorXcd::Zero(static_cast<int>(sys.basis().size()));
  psi0(idx) = 1.0;
  st.psi.assign(st.grid.q.size(), psi0);
  return st;
}

double JointState::norm_squared() const {
  double s = 0.0;
  for (size_t k = 0; k < psi.size(); ++k) {
    s += grid.weight[k] * psi[k].squaredNorm();
  }
  return s;
}

double JointState::population(const LevelSystem& sys, const BasisState& s) const {
  const int idx = sys.state_index(s);
  double p = 0.0;
  for (size_t k = 0; k < psi.size(); ++k) {
    p += grid.weight[k] * std::norm(psi[k](idx));
  }
  return p;
}

MatrixXcd drive_matrix(const LevelSystem& sys, const Drive& drive, double t) {
  const int n = static_cast<int>(sys.basis().size());
  MatrixXcd out(n, n);
  build_drive(drive_terms(sys, drive), drive.convention(), drive.omega_l(), t,
              out);
  return out;
}

void evolve_measurement(JointState& state, const LevelSystem& sys,
                        const Drive& drive, const DetectorModel& det,
                        double t0, double tau, const Options& opt) {
  validate_options(opt);
  if (tau < 0.0) throw ValidationError("oracle: tau must be >= 0");
  if (state.psi.size() != state.grid.q.size()) {
    throw ValidationError("oracle: state does not match its grid");
  }
  const double before = state.norm_squared();
  measurement_segment(state.psi, state.grid, sys, drive, det.lambda(), t0, tau,
                      opt);
  check_norm_drift(before, state.norm_squared(), "evolve_measurement");
}

void evolve_free(JointState& state, const LevelSystem& sys, const Drive& drive,
                 double t0, double duration, const Options& opt) {
  validate_options(opt);
  if (duration < 0.0) throw ValidationError("oracle: duration must be >= 0");
  if (duration == 0.0) return;
  const double before = state.norm_squared();
  const MatrixXcd u = free_segment_propagator(sys, drive, t0, duration, opt);
  const int n_points = static_cast<int>(state.psi.size());
  const bool par = opt.parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int k = 0; k < n_points; ++k) {
    VectorXcd scratch = state.psi[k];
    apply_u(u, state.psi[k], scratch);
  }
  check_norm_drift(before, state.norm_squared(), "evolve_free");
}

MatrixXcd free_propagator(const LevelSystem& sys, const Drive& drive, double t0,
                          double duration, const Options& opt) {
  validate_options(opt);
  if (duration < 0.0) throw ValidationError("oracle: duration must be >= 0");
  return free_segment_propagator(sys, drive, t0, duration, opt);
}

double jump_probability_exact(const LevelSystem& sys, const Drive& drive,
                              const DetectorModel& det, const Schedule& sched,
                              const Transition& tr, const Options& opt) {
  validate_options(opt);
  require_gaussian(det);
  sched.validate();
  validate_transition(sys, tr);
  auto grid = PointerGrid::gaussian(det.sigma(), opt.grid_points,
                                    opt.grid_half_width_sigmas);
  JointState state = JointState::pure(std::move(grid), sys, tr.initial());
  evolve_measurement(state, sys, drive, det, sched.t0, sched.tau, opt);
  evolve_free(state, sys, drive, sched.t0 + sched.tau, sched.T - sched.tau, opt);
  return state.population(sys, tr.final());
}

double survival_exact(const LevelSystem& sys, const Drive& drive,
                      const DetectorModel& det, const Schedule& sched,
                      const BasisState& initial, const Options& opt) {
  validate_options(opt);
  require_gaussian(det);
  sched.validate();
  if (!sys.has_state(initial)) {
    throw LookupError("oracle: unknown initial state");
  }
  auto grid = PointerGrid::gaussian(det.sigma(), opt.grid_points,
                                    opt.grid_half_width_sigmas);
  JointState state = JointState::pure(std::move(grid), sys, initial);
  evolve_measurement(state, sys, drive, det, sched.t0, sched.tau, opt);
  evolve_free(state, sys, drive, sched.t0 + sched.tau, sched.T - sched.tau, opt);
  return state.population(sys, initial);
}

std::vector<double> repeated_cycles(const LevelSystem& sys, const Drive& drive,
                                    const DetectorModel& det,
                                    const Schedule& sched,
                                    const BasisState& initial,
                                    const Options& opt) {
  validate_options(opt);
  require_gaussian(det);
  sched.validate();
  const int n = static_cast<int>(sys.basis().size());
  const int idx = sys.state_index(initial);
  const auto grid = PointerGrid::gaussian(det.sigma(), opt.grid_points,
                                          opt.grid_half_width_sigmas);
  const int n_points = grid.size();

  MatrixXcd rho = MatrixXcd::Zero(n, n);
  rho(idx, idx) = 1.0;
  std::vector<double> survival(static_cast<size_t>(sched.N));
  std::vector<MatrixXcd> g;
  MatrixXcd rho_next(n, n), branch(n, n);

  for (int c = 0; c < sched.N; ++c) {
    const double t_start = sched.t0 + static_cast<double>(c) * sched.T;
    // Fresh pointer state: every cycle restarts from the same grid weights.
    g.assign(n_points, MatrixXcd::Identity(n, n));
    measurement_segment(g, grid, sys, drive, det.lambda(), t_start, sched.tau,
                        opt);
    const MatrixXcd u_free = free_segment_propagator(
        sys, drive, t_start + sched.tau, sched.T - sched.tau, opt);
    const bool par = opt.parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int k = 0; k < n_points; ++k) {
      MatrixXcd scratch = g[k];
      apply_u(u_free, g[k], scratch);
    }
    // Detector trace: mixture over pointer branches, fixed summation order.
    rho_next.setZero();
    for (int k = 0; k < n_points; ++k) {
      branch.noalias() = g[k] * rho;
      rho_next.noalias() += grid.weight[k] * (branch * g[k].adjoint());
    }
    rho = rho_next;
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10 * static_cast<double>(c + 1)) {
      throw IntegrationError(
          "repeated_cycles: trace drift exceeds 1e-10 per cycle");
    }
    survival[static_cast<size_t>(c)] = rho(idx, idx).real();
  }
  return survival;
}

}  // namespace zeno::oracle
