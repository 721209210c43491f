#pragma once

#include <cstddef>
#include <vector>

#include "chaosbe/chaos2.hpp"
#include "chaosbe/empirical.hpp"
#include "chaosbe/grid_tensor.hpp"
#include "chaosbe/random.hpp"

namespace chaosbe {

/// Normalized exploding quadratic functional of the d-parameter sheet.
struct SheetModel {
  int dimension = 1;       // d >= 1
  double epsilon = 0.0;    // 0 < epsilon < 0.9
  std::size_t grid = 200;  // points per axis
};

/// Kernel (4 log 1/eps)^(-1/2) [ (x v y v eps)^(-1) - 1 ] on [0,1]^2,
/// midpoint-discretized. Rejects eps outside (0, 0.9).
GridTensor sheet_kernel_1d(double epsilon, std::size_t m);

/// Eigenvalues of the 1-d kernel operator.
Chaos2Spectrum sheet_spectrum_1d(double epsilon, std::size_t m);

/// All pairwise products of the 1-d eigenvalues (the d = 2 product kernel
/// diagonalizes on the tensor basis).
Chaos2Spectrum kronecker_spectrum_2d(const Chaos2Spectrum& one_d);

struct SheetCumulants {
  std::vector<double> one_d;   // kappa_j(1, eps), j = 1..jmax at index j-1
  std::vector<double> lifted;  // kappa_j(d, eps) via the product identity
};

/// Lift route: kappa_j(d) = c_j * (kappa_j(1)/c_j)^d with c_j = 2^(j-1)(j-1)!.
/// d <= 4, jmax <= 8.
SheetCumulants sheet_cumulants(const SheetModel& model, int jmax);

/// Same cumulants from the explicit Kronecker spectrum; d must be 2.
std::vector<double> sheet_cumulants_kronecker_2d(const SheetModel& model, int jmax);

struct SheetRateReport {
  double phi = 0.0;
  double kolmogorov_bound = 0.0;
  double d_kol = 0.0;
  double dkw = 0.0;              // at delta = 0.01
  double reference_rate = 0.0;   // (log 1/eps)^(-d/2)
  double ratio_to_phi = 0.0;     // d_kol / phi
  double ratio_to_rate = 0.0;    // d_kol * (log 1/eps)^(d/2)
  bool underpowered = false;     // dkw > phi / 3
  std::size_t n = 0;
};

/// Samples the standardized functional exactly in law (d = 1 spectrum or the
/// d = 2 Kronecker spectrum) and compares the Kolmogorov distance against the
/// cumulant bound and the reference rate. d <= 2, n >= 1.
SheetRateReport sheet_rate_report(const SheetModel& model, const RandomSource& src,
                                  std::size_t n, unsigned workers = 1);

}  // namespace chaosbe
