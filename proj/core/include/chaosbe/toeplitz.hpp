#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chaosbe/chaos2.hpp"
#include "chaosbe/quadrature.hpp"

namespace chaosbe {

/// Spectral density f and generator g of a Toeplitz quadratic functional.
/// Both must be even and integrable; f must be nonnegative. The integrability
/// tags record the declared L^p / L^q memberships.
struct SpectralPair {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> g;
  double f_tail_p = 2.0;
  double g_tail_q = 2.0;
};

/// Checks evenness (|f(x) - f(-x)| <= 1e-12) and nonnegativity of f on a
/// probe grid. Throws std::invalid_argument on violation.
void validate_pair(const SpectralPair& pair);

SpectralPair cauchy_pair();    // f = g = Cauchy density
SpectralPair gaussian_pair();  // f = g = standard Gaussian density
/// Even, sign-changing generator calibrated so that the cubic product
/// integral of the pair vanishes (zero limit constant).
SpectralPair signed_pair();

/// Even function tabulated on lambda >= 0 with linear interpolation and a
/// declared power-law tail beyond the last tabulated point.
struct TabulatedFunction {
  std::vector<double> lambda;
  std::vector<double> value;
  double tail_exponent = 2.0;

  double operator()(double x) const;
  /// CSV with header "lambda,value", strictly increasing lambda >= 0.
  static TabulatedFunction load_csv(const std::string& path, double tail_exponent);
};

/// Fourier transform of an even integrable function:
/// psi_hat(t) = 2 * int_0^inf cos(lambda t) psi(lambda) d lambda.
/// Oscillatory tails are summed chunk-wise between cosine zeros with Euler
/// acceleration.
IntegralResult fourier_transform(const std::function<double(double)>& psi, double t, double tol);

struct ToeplitzReport {
  double horizon = 0.0;        // T
  std::size_t grid_size = 0;   // m
  std::vector<double> raw_cumulants;   // of Q tilde, index j-1, j = 1..jmax
  std::vector<double> standardized;    // of Q check: raw_j / sigma(T)^j
  double sigma2_T = 0.0;
  bool converged = true;       // all psi_hat evaluations converged
};

/// Cumulants via traces of powers of the discretized operator product
/// B_T(f) B_T(g) on a uniform midpoint grid over [0, T].
ToeplitzReport toeplitz_cumulants(const SpectralPair& pair, double horizon, std::size_t m,
                                  int jmax, unsigned workers = 1);

struct ToeplitzAsymptotics {
  std::vector<double> per_j;   // limit of standardized kappa_j * T^(j/2-1), j = 1..jmax
  std::vector<bool> per_j_converged;
  double sigma2_inf = 0.0;     // 16 pi^3 * int f^2 g^2
  double limit_constant = 0.0; // sqrt(2/3) * int f^3 g^3 / (int f^2 g^2)^(3/2)
  bool converged = true;
};

ToeplitzAsymptotics asymptotic_constants(const SpectralPair& pair, int jmax = 4,
                                         double tol = 1e-10);

/// Second-chaos spectrum of the discretized quadratic form, normalized as
/// Q tilde (divide once more by sigma(T) for Q check). Throws when the
/// covariance matrix is indefinite beyond a -1e-8 * max relative floor.
Chaos2Spectrum chaos2_embedding(const SpectralPair& pair, double horizon, std::size_t m,
                                unsigned workers = 1);

}  // namespace chaosbe
