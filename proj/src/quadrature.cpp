#include "zeno/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace zeno::quad {

namespace {

// Nodes and weights of the (G7, K15) pair on [-1, 1]. Nonnegative abscissae
// only; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};

constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

constexpr std::array<double, 4> kGaussW = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
  double a, b;
  std::complex<double> value;
  double err;
};

Segment evaluate(const Integrand& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::complex<double> k15 = 0.0;
  std::complex<double> g7 = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    std::complex<double> fi;
    if (kNodes[i] == 0.0) {
      fi = f(mid);
    } else {
      fi = f(mid + half * kNodes[i]) + f(mid - half * kNodes[i]);
    }
    k15 += kKronrodW[i] * fi;
    if (i % 2 == 1) g7 += kGaussW[i / 2] * fi;
  }
  k15 *= half;
  g7 *= half;
  return Segment{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt,
                 const std::vector<double>& breakpoints) {
  if (a > b) {
    Result r = integrate(f, b, a, opt, breakpoints);
    r.value = -r.value;
    return r;
  }
  if (a == b) return Result{};

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segs;
  segs.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    segs.push_back(evaluate(f, cuts[i], cuts[i + 1]));
  }

  auto totals = [&segs]() {
    std::complex<double> v = 0.0;
    double e = 0.0;
    for (const Segment& s : segs) {
      v += s.value;
      e += s.err;
    }
    return std::pair{v, e};
  };

  for (;;) {
    auto [value, err] = totals();
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (err <= tol) {
      return Result{value, err, static_cast<int>(segs.size())};
    }
    if (static_cast<int>(segs.size()) >= opt.max_segments) {
      throw QuadratureError(
          "quadrature: tolerance not met after " + std::to_string(segs.size()) +
              " segments (achieved error " + std::to_string(err) + ")",
          value, err);
    }

    // Split the worst segment; tie-break on the left endpoint so the
    // subdivision order is deterministic.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i) {
      if (segs[i].err > segs[worst].err ||
          (segs[i].err == segs[worst].err && segs[i].a < segs[worst].a)) {
        worst = i;
      }
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      auto [v2, e2] = totals();
      throw QuadratureError(
          "quadrature: interval too narrow to subdivide further", v2, e2);
    }
    segs[worst] = evaluate(f, s.a, mid);
    segs.push_back(evaluate(f, mid, s.b));
  }
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace zeno::quad
