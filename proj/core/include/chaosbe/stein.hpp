#pragma once

namespace chaosbe {

double normal_pdf(double x);
double normal_cdf(double x);

/// exp(t^2/2) * (1 - Phi(t)), evaluated stably for all t where the result
/// is representable (Mills-ratio continued fraction for large t).
double scaled_gaussian_tail(double t);

/// Probabilists' Hermite polynomial H_q(z) by forward recurrence. q <= 30.
double hermite(int q, double z);

/// q-th derivative of the standard normal CDF: (-1)^(q-1) H_{q-1}(z) pdf(z).
double phi_cdf_derivative(int q, double z);

/// Bounded solution of the Stein equation at level z, evaluated at x.
double stein_solution(double z, double x);

enum class JumpSide { Left, Right };

/// Derivative of the Stein solution: x*f_z(x) + 1_{(-inf,z]}(x) - Phi(z).
/// At the jump x == z the caller picks a one-sided limit.
double stein_derivative(double z, double x, JumpSide side_at_jump = JumpSide::Left);

/// Closed form of the Gaussian pairing of f_z' with H_q:
/// H_{q+1}(z) * pdf(z) / (q + 2). 1 <= q <= 10.
double stein_hermite_pairing(int q, double z);

struct PairingCheck {
  double closed_form;
  double quadrature;
  double quadrature_error;
  bool converged;
};

/// Companion verification: integrates f_z'(x) H_q(x) pdf(x) over the real
/// line and reports it next to the closed form.
PairingCheck stein_hermite_pairing_check(int q, double z, double tol = 1e-10);

}  // namespace chaosbe
