#include "chaosbe/stein.hpp"

#include <cmath>
#include <stdexcept>

#include "chaosbe/quadrature.hpp"

namespace chaosbe {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double scaled_gaussian_tail(double t) {
  if (t <= 8.0) {
    // Direct product is safe: erfc carries the tail accurately and the
    // exponential stays below e^32.
    if (t < -37.0) throw std::domain_error("scaled_gaussian_tail: result overflows");
    return std::exp(0.5 * t * t) * normal_cdf(-t);
  }
  // Mills ratio continued fraction: M(t) = 1/(t + 1/(t + 2/(t + ...))).
  double cf = 0.0;
  for (int k = 40; k >= 1; --k) cf = static_cast<double>(k) / (t + cf);
  return 1.0 / ((t + cf) * kSqrt2Pi);
}

double hermite(int q, double z) {
  if (q < 0) throw std::domain_error("hermite: order must be >= 0");
  if (q > 30) throw std::domain_error("hermite: order > 30 overflows double precision");
  double h0 = 1.0;
  if (q == 0) return h0;
  double h1 = z;
  for (int k = 1; k < q; ++k) {
    double h2 = z * h1 - static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double phi_cdf_derivative(int q, double z) {
  if (q < 1 || q > 30) throw std::domain_error("phi_cdf_derivative: q must be in [1, 30]");
  double sign = (q % 2 == 1) ? 1.0 : -1.0;
  return sign * hermite(q - 1, z) * normal_pdf(z);
}

double stein_solution(double z, double x) {
  if (!std::isfinite(z) || !std::isfinite(x))
    throw std::domain_error("stein_solution: arguments must be finite");
  // f_z(x) = sqrt(2*pi) e^{x^2/2} Phi(min(x,z)) (1 - Phi(max(x,z))),
  // rearranged per branch so every exponential argument is <= 0.
  if (x <= z) {
    if (x <= 0.0) return kSqrt2Pi * scaled_gaussian_tail(-x) * normal_cdf(-z);
    return kSqrt2Pi * normal_cdf(x) * scaled_gaussian_tail(z) *
           std::exp(0.5 * (x * x - z * z));
  }
  if (x >= 0.0) return kSqrt2Pi * normal_cdf(z) * scaled_gaussian_tail(x);
  return kSqrt2Pi * normal_cdf(-x) * scaled_gaussian_tail(-z) *
         std::exp(0.5 * (x * x - z * z));
}

double stein_derivative(double z, double x, JumpSide side_at_jump) {
  bool below = (x < z) || (x == z && side_at_jump == JumpSide::Left);
  double indicator = below ? 1.0 : 0.0;
  return x * stein_solution(z, x) + indicator - normal_cdf(z);
}

double stein_hermite_pairing(int q, double z) {
  if (q < 1 || q > 10) throw std::domain_error("stein_hermite_pairing: q must be in [1, 10]");
  return hermite(q + 1, z) * normal_pdf(z) / static_cast<double>(q + 2);
}

PairingCheck stein_hermite_pairing_check(int q, double z, double tol) {
  PairingCheck out{};
  out.closed_form = stein_hermite_pairing(q, z);

  auto integrand = [&](double x) {
    return stein_derivative(z, x) * hermite(q, x) * normal_pdf(x);
  };
  // The integrand jumps at x = z; split there. Tails beyond |x| = 14 are
  // below 1e-40 for q <= 10.
  const double lo = -14.0, hi = 14.0;
  auto left = integrate(integrand, lo, std::min(std::max(z, lo), hi), tol * 0.5);
  auto right = integrate(integrand, std::min(std::max(z, lo), hi), hi, tol * 0.5);
  out.quadrature = left.value + right.value;
  out.quadrature_error = left.error + right.error;
  out.converged = left.converged && right.converged;
  return out;
}

}  // namespace chaosbe
