#include "zeno/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace zeno {

namespace {

std::complex<double> interpolate(const FTable& t, double x) {
  if (x < t.x.front() || x > t.x.back()) return {0.0, 0.0};
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  if (it == t.x.begin()) return t.f.front();
  if (it == t.x.end()) return t.f.back();
  const std::size_t hi = static_cast<std::size_t>(it - t.x.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - t.x[lo]) / (t.x[hi] - t.x[lo]);
  return t.f[lo] + w * (t.f[hi] - t.f[lo]);
}

void validate_table(const FTable& t) {
  if (t.x.size() < 2 || t.x.size() != t.f.size()) {
    throw ValidationError("detector: tabulated F needs at least two samples");
  }
  for (std::size_t i = 1; i < t.x.size(); ++i) {
    if (!(t.x[i] > t.x[i - 1])) {
      throw ValidationError("detector: tabulated grid not monotonic in x");
    }
  }
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    if (!std::isfinite(t.x[i]) || !std::isfinite(t.f[i].real()) ||
        !std::isfinite(t.f[i].imag())) {
      throw ValidationError("detector: tabulated F has non-finite samples");
    }
    if (std::abs(t.f[i]) > 1.0 + 1e-12) {
      throw ValidationError("detector: |F(x)| exceeds 1");
    }
  }
  if (std::abs(interpolate(t, 0.0) - std::complex<double>{1.0, 0.0}) > 1e-9) {
    throw ValidationError("detector: tabulated F(0) != 1");
  }
  // Real pointer wavefunctions give F(-x) = conj(F(x)).
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    const std::complex<double> mirror = interpolate(t, -t.x[i]);
    if (std::abs(mirror - std::conj(t.f[i])) > 1e-9) {
      throw ValidationError(
          "detector: tabulated F violates F(-x) = conj(F(x))");
    }
  }
}

}  // namespace

DetectorModel DetectorModel::gaussian(double sigma, double lambda) {
  if (!(sigma > 0.0)) throw ValidationError("detector: sigma must be > 0");
  if (!(lambda >= 0.0)) throw ValidationError("detector: lambda must be >= 0");
  DetectorModel m(Kind::GaussianPointer, lambda);
  m.sigma_ = sigma;
  return m;
}

DetectorModel DetectorModel::tabulated(FTable table, double lambda,
                                       std::string source_path) {
  if (!(lambda >= 0.0)) throw ValidationError("detector: lambda must be >= 0");
  validate_table(table);
  DetectorModel m(Kind::TabulatedF, lambda);
  m.table_ = std::move(table);
  m.source_path_ = std::move(source_path);
  return m;
}

DetectorModel DetectorModel::tabulated_from_file(const std::string& path,
                                                 double lambda) {
  std::ifstream in(path);
  if (!in) throw ValidationError("detector: cannot open F table '" + path + "'");
  FTable t;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x, re, im = 0.0;
    if (!(ls >> x >> re)) {
      throw ValidationError("detector: malformed line in '" + path + "': " + line);
    }
    ls >> im;  // optional third column
    t.x.push_back(x);
    t.f.emplace_back(re, im);
  }
  return tabulated(std::move(t), lambda, path);
}

double DetectorModel::sigma() const {
  if (kind_ != Kind::GaussianPointer) {
    throw ValidationError("detector: sigma is defined for the gaussian pointer only");
  }
  return sigma_;
}

const FTable& DetectorModel::table() const {
  if (kind_ != Kind::TabulatedF) {
    throw ValidationError("detector: no table for a gaussian pointer");
  }
  return table_;
}

std::complex<double> DetectorModel::characteristic_function(double x) const {
  if (kind_ == Kind::GaussianPointer) {
    return {std::exp(-0.5 * sigma_ * sigma_ * x * x), 0.0};
  }
  return interpolate(table_, x);
}

double DetectorModel::width_c() const {
  if (kind_ == Kind::GaussianPointer) {
    return std::sqrt(std::numbers::pi / 2.0) / sigma_;
  }
  if (std::abs(table_.f.front()) > 1e-3 || std::abs(table_.f.back()) > 1e-3) {
    throw ValidationError("detector: tabulated F does not decay at the grid ends");
  }
  std::complex<double> integral = 0.0;
  for (std::size_t i = 1; i < table_.x.size(); ++i) {
    integral += 0.5 * (table_.f[i] + table_.f[i - 1]) *
                (table_.x[i] - table_.x[i - 1]);
  }
  if (std::abs(integral.imag()) >= 1e-10 * std::abs(integral.real())) {
    throw ValidationError("detector: Im Int F(x) dx does not vanish");
  }
  return 0.5 * integral.real();
}

double DetectorModel::lambda_eff() const {
  const double c = width_c();
  if (!(c > 0.0)) throw ValidationError("detector: degenerate pointer, C <= 0");
  return lambda_ / c;
}

std::vector<double> DetectorModel::kernel_breakpoints(double lambda_omega,
                                                      double s_max) const {
  std::vector<double> pts;
  const double lw = std::abs(lambda_omega);
  if (lw == 0.0 || s_max <= 0.0) return pts;
  if (kind_ == Kind::GaussianPointer) {
    const double s_star = 10.0 * width_c() / lw;
    if (s_star < s_max) pts.push_back(s_star);
  } else {
    // F vanishes outside the tabulated grid.
    for (double edge : {std::abs(table_.x.front()), std::abs(table_.x.back())}) {
      const double s_edge = edge / lw;
      if (s_edge > 0.0 && s_edge < s_max) pts.push_back(s_edge);
    }
  }
  return pts;
}

}  // namespace zeno
