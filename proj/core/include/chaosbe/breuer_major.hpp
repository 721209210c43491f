#pragma once

#include <cstddef>
#include <vector>

#include "chaosbe/chaos2.hpp"
#include "chaosbe/linalg.hpp"
#include "chaosbe/random.hpp"

namespace chaosbe {

/// Time-average of a Hermite polynomial of unit fBm increments,
/// Z_T = (sigma(T) sqrt(T))^(-1) int_0^T H_q(B_{u+1} - B_u) du,
/// discretized on a uniform mesh.
struct FbmModel {
  double hurst = 0.3;    // H in (0, 1/2)
  int q = 2;             // even Hermite order >= 2
  double horizon = 200;  // T
  double mesh = 0.25;    // delta, T/delta integral
};

void validate_model(const FbmModel& model);

/// Covariance of unit fBm increments at lag x:
/// rho(x) = (|x+1|^(2H) + |x-1|^(2H) - 2|x|^(2H)) / 2.
double fbm_rho(double hurst, double x);

struct VarianceConstants {
  double sigma2_T = 0.0;
  double sigma2_inf = 0.0;
  double truncation_radius = 0.0;
  bool converged = true;
};

/// sigma^2(T) = 2 q! int_0^T (1 - x/T) rho^q(x) dx (stationarity reduction)
/// and sigma^2(inf) = q! int_R rho^q, with an extrapolated power-law tail
/// estimate deciding convergence.
VarianceConstants variance_constants(const FbmModel& model);

/// sigma^2(T) straight from the 2-d definition (q!/T) int_[0,T]^2 rho^q(u-v).
/// Quadratic cost, small T only; dual route for the 1-d reduction.
double sigma2_T_direct(const FbmModel& model);

struct BreuerMajorConstants {
  double sigma2_T = 0.0;
  double sigma2_inf = 0.0;
  std::vector<double> sigma_hat_s2;  // per-s variance pieces, s = 1..q-1
  double sigma_hat2 = 0.0;
  double gamma_hat = 0.0;
  double curve_coefficient = 0.0;    // gamma_hat / 3
  double truncation_radius = 0.0;
  double error_estimate = 0.0;       // max rel change under radius doubling
  bool converged = true;
};

/// Triple and double product integrals of powers of rho, reduced to nested
/// 1-d quadrature through autocorrelation functions. All combinatorial
/// prefactors are computed in exact integer arithmetic.
BreuerMajorConstants limit_constants(const FbmModel& model, double tol = 1e-6);

/// Cholesky (eigen fallback) factor of the increment covariance
/// [rho((i-j) delta)], reused across replicas. The replica with index r
/// consumes counters [r*N, (r+1)*N) of the source.
class IncrementField {
 public:
  explicit IncrementField(const FbmModel& model);

  std::size_t size() const { return n_; }

  /// One stationary increment path.
  std::vector<double> sample_path(const RandomSource& src, std::size_t replica = 0) const;

  /// Z_T for replicas [first, first + count), normalized by sigma(T) sqrt(T).
  std::vector<double> sample_zt(const RandomSource& src, std::size_t first, std::size_t count,
                                unsigned workers = 1) const;

  const Matrix& factor() const { return factor_; }
  double sigma2_T() const { return sigma2_T_; }

 private:
  FbmModel model_;
  std::size_t n_ = 0;
  Matrix factor_;
  double sigma2_T_ = 0.0;
};

std::vector<double> simulate_increment_field(const FbmModel& model, const RandomSource& src);

std::vector<double> sample_ZT(const FbmModel& model, const RandomSource& src, std::size_t n,
                              unsigned workers = 1);

struct LimitPoint {
  double horizon = 0.0;
  double z = 0.0;
  double measured = 0.0;   // sqrt(T) (Phat(Z_T <= z) - Phi(z))
  double standard_error = 0.0;
  double predicted = 0.0;  // (gamma_hat/3)(z^2 - 1) pdf(z)
  bool underpowered = false;
};

struct LimitVerification {
  std::vector<LimitPoint> points;
  std::vector<double> horizons;
  std::vector<double> sqrt_t_dkol;  // sqrt(T) * empirical Kolmogorov distance
  double gamma_hat = 0.0;
};

LimitVerification verify_limit(const FbmModel& base, const std::vector<double>& horizons,
                               const std::vector<double>& z_grid, const RandomSource& src,
                               std::size_t n, unsigned workers = 1);

/// The q = 2 discretized functional is a quadratic form in the increment
/// field; its exact spectrum gives cumulants independent of any sampling.
Chaos2Spectrum zt_spectrum(const FbmModel& model);

struct Chaos2CrossCheck {
  double kappa3 = 0.0;
  double phi = 0.0;
  double alpha = 0.0;      // kappa3 / phi from the spectrum route
  double predicted = 0.0;  // -2 gamma_hat / sigma_hat from the quadrature route
};

Chaos2CrossCheck chaos2_cross_check(const FbmModel& model);

}  // namespace chaosbe
