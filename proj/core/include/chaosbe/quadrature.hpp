#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace chaosbe {

/// Quadrature result with an achieved error estimate. `converged == false`
/// means the refinement budget ran out before reaching the requested tol.
struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evals = 0;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;
using Fn3 = std::function<double(double, double, double)>;

/// Adaptive panel-bisection integration with nested Gauss-Legendre rules.
IntegralResult integrate(const Fn1& f, double a, double b, double tol);

/// Iterated adaptive integration over a rectangle / box.
IntegralResult integrate(const Fn2& f, double ax, double bx, double ay, double by, double tol);
IntegralResult integrate(const Fn3& f, double ax, double bx, double ay, double by,
                         double az, double bz, double tol);

/// Quasi-random (Halton) box integration; error estimated by 2x oversampling.
IntegralResult integrate_qmc3(const Fn3& f, double ax, double bx, double ay, double by,
                              double az, double bz, double tol,
                              std::size_t max_points = 1 << 22);

/// Nodes/weights of an n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration (machine accurate, no tables).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t n);

/// Composite rule on explicit panel breakpoints, `pts` Gauss points per panel.
/// Used for tensor-product integration of kernels with known kink locations.
GaussRule composite_rule(const std::vector<double>& breakpoints, std::size_t pts);

}  // namespace chaosbe
