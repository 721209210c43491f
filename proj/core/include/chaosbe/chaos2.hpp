#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chaosbe/grid_tensor.hpp"
#include "chaosbe/random.hpp"

namespace chaosbe {

/// Eigenvalues of the kernel operator g -> f (x)_1 g, i.e. of h * F where F
/// is the order-2 value matrix. Everything about the law of the chaos
/// element (cumulants, bounds, exact sampling) is a function of this list.
struct Chaos2Spectrum {
  std::vector<double> eigenvalues;  // descending by |lambda|
  double mesh = 1.0;

  std::size_t size() const { return eigenvalues.size(); }
};

Chaos2Spectrum spectrum(const GridTensor& f);

/// kappa_p = 2^(p-1) (p-1)! sum_j lambda_j^p for p >= 2; 0 for p = 1.
double cumulant(const Chaos2Spectrum& s, int p);

/// Cross-check route through traces of matrix powers of h * F.
double cumulant_trace_route(const GridTensor& f, int p);

struct NormalApproxReport {
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
  double kappa8 = 0.0;
  double phi = 0.0;               // sqrt(kappa4/6 + (kappa2 - 1)^2)
  double kolmogorov_bound = 0.0;  // equals phi
  std::optional<double> alpha;        // kappa3 / phi
  std::optional<double> eighth_ratio; // kappa8 / phi^4
  double edgeworth_coefficient = 0.0; // -kappa3 / 6
};

NormalApproxReport normal_approx_report(const Chaos2Spectrum& s);

/// Predicted limit of (P(F <= z) - Phi(z)) / phi:
/// (alpha / 6) (1 - z^2) exp(-z^2/2) / sqrt(2 pi).
double limit_curve(double alpha, double z);

/// Rescales by 1/sqrt(kappa2) so that kappa2 == 1. Rejects kappa2 < 1e-14.
Chaos2Spectrum standardize(const Chaos2Spectrum& s);

/// n i.i.d. draws of sum_j lambda_j (xi_j^2 - 1). Draw i consumes counters
/// [i*m, (i+1)*m) of `src`, so results are identical for any worker count.
std::vector<double> sample(const Chaos2Spectrum& s, const RandomSource& src, std::size_t n,
                           unsigned workers = 1);

struct MomentIdentityCheck {
  double lhs = 0.0;      // E[F^s ||DF||^2]
  double rhs = 0.0;      // (2/(s+1)) E[F^(s+2)]
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  double diff_se = 0.0;  // standard error of the paired difference
  std::size_t n = 0;
};

/// Monte Carlo check of E(F^s ||DF||^2) = (q/(s+1)) E(F^(s+2)) at q = 2,
/// with ||DF||^2 = sum_j 4 lambda_j^2 xi_j^2 in eigen-coordinates.
MomentIdentityCheck malliavin_moment_check(const Chaos2Spectrum& s, const RandomSource& src,
                                           std::size_t n, int s_exp);

}  // namespace chaosbe
