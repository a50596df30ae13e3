#pragma once

#include <complex>
#include <string>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

// Sampled characteristic function on a strictly increasing grid.
struct FTable {
  std::vector<double> x;
  std::vector<std::complex<double>> f;
};

// Measurement pointer: characteristic function F(x) = <Phi|exp(ix q)|Phi>,
// width C = (1/2) Int F(x) dx, coupling strength lambda and effective
// strength Lambda = lambda / C. All quantities are dimensionless; the
// physical scale enters downstream through lambda*omega products.
class DetectorModel {
 public:
  enum class Kind { GaussianPointer, TabulatedF };

  // Gaussian |Phi(q)|^2 with coordinate standard deviation sigma > 0.
  static DetectorModel gaussian(double sigma, double lambda);

  static DetectorModel tabulated(FTable table, double lambda,
                                 std::string source_path = {});

  // Two-or-three-column text file `x  ReF  [ImF]`, `#` comments allowed.
  static DetectorModel tabulated_from_file(const std::string& path,
                                           double lambda);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double sigma() const;
  const FTable& table() const;
  const std::string& source_path() const { return source_path_; }

  std::complex<double> characteristic_function(double x) const;
  double width_c() const;
  double lambda_eff() const;

  // Distance scale over which F(lambda*omega*s) decays, used to seed the
  // quadrature subdivision. Returns the breakpoints in s for a kernel
  // argument lambda*omega*s; empty when there is no boundary layer.
  std::vector<double> kernel_breakpoints(double lambda_omega,
                                         double s_max) const;

 private:
  DetectorModel(Kind kind, double lambda) : kind_(kind), lambda_(lambda) {}

  Kind kind_;
  double lambda_;
  double sigma_ = 0.0;
  FTable table_;
  std::string source_path_;
};

}  // namespace zeno
