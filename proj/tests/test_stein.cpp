#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chaosbe/quadrature.hpp"
#include "chaosbe/stein.hpp"

using namespace chaosbe;

TEST_CASE("hermite polynomials match explicit forms") {
  for (double z : {-2.5, -0.7, 0.0, 1.1, 3.0}) {
    CHECK(hermite(0, z) == doctest::Approx(1.0));
    CHECK(hermite(1, z) == doctest::Approx(z));
    CHECK(hermite(2, z) == doctest::Approx(z * z - 1.0));
    CHECK(hermite(3, z) == doctest::Approx(z * z * z - 3.0 * z));
    CHECK(hermite(4, z) == doctest::Approx(z * z * z * z - 6.0 * z * z + 3.0));
  }
  CHECK_THROWS(hermite(-1, 0.0));
}

TEST_CASE("hermite polynomials are orthogonal under the gaussian weight") {
  for (int p = 1; p <= 5; ++p)
    for (int q = p; q <= 5; ++q) {
      auto r = integrate(
          [p, q](double x) { return hermite(p, x) * hermite(q, x) * normal_pdf(x); }, -12.0,
          12.0, 1e-12);
      double expected = p == q ? std::tgamma(p + 1.0) : 0.0;
      CHECK(std::abs(r.value - expected) < 1e-9);
    }
}

TEST_CASE("cdf derivatives follow the hermite identity") {
  for (double z : {-1.7, 0.3, 2.2}) {
    double h = 1e-5;
    double numeric = (normal_cdf(z + h) - normal_cdf(z - h)) / (2.0 * h);
    CHECK(std::abs(phi_cdf_derivative(1, z) - numeric) < 1e-8);
    double numeric3 = (phi_cdf_derivative(2, z + h) - phi_cdf_derivative(2, z - h)) / (2.0 * h);
    CHECK(std::abs(phi_cdf_derivative(3, z) - numeric3) < 1e-7);
  }
}

TEST_CASE("scaled gaussian tail is stable across the branch switch") {
  for (double t : {0.0, 1.0, 7.9, 8.0, 8.1, 20.0, 100.0}) {
    double v = scaled_gaussian_tail(t);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
  }
  // the slope near t = 8 is O(0.01), so a 2e-6 window moves the value by
  // O(2e-8); any branch switch there must not add a visible jump on top.
  CHECK(std::abs(scaled_gaussian_tail(7.999999) - scaled_gaussian_tail(8.000001)) < 1e-7);
  CHECK(scaled_gaussian_tail(0.0) == doctest::Approx(0.5));
  // Mills asymptote ~ 1/(t sqrt(2 pi)) * ... : compare against the identity
  // value at moderate t computed from erfc directly.
  double t = 6.0;
  double direct = std::exp(t * t / 2.0) * 0.5 * std::erfc(t / std::numbers::sqrt2);
  CHECK(scaled_gaussian_tail(t) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("stein solution satisfies the known bounds") {
  double sup_f = 0.0, sup_fp = 0.0;
  for (double z = -3.0; z <= 3.0; z += 0.25) {
    for (double x = -6.0; x <= 6.0; x += 0.05) {
      sup_f = std::max(sup_f, std::abs(stein_solution(z, x)));
      sup_fp = std::max(sup_fp, std::abs(stein_derivative(z, x)));
    }
  }
  CHECK(sup_f <= std::sqrt(2.0 * std::numbers::pi) / 4.0 + 1e-12);
  CHECK(sup_fp <= 1.0 + 1e-12);
}

TEST_CASE("stein solution solves the stein equation") {
  for (double z : {-2.0, -0.5, 0.9, 2.4}) {
    for (double x : {-3.0, -1.0, 0.0, 0.5, 1.7, 3.2}) {
      double lhs = stein_derivative(z, x) - x * stein_solution(z, x);
      double rhs = (x <= z ? 1.0 : 0.0) - normal_cdf(z);
      CHECK(std::abs(lhs - rhs) < 1e-13);
    }
  }
}

TEST_CASE("stein solution is continuous at the jump point") {
  for (double z : {-1.5, 0.0, 2.0}) {
    double below = stein_solution(z, z - 1e-9);
    double above = stein_solution(z, z + 1e-9);
    CHECK(std::abs(below - above) < 1e-7);
    // the derivative jumps by exactly one across x = z
    double dl = stein_derivative(z, z, JumpSide::Left);
    double dr = stein_derivative(z, z, JumpSide::Right);
    CHECK(std::abs((dl - dr) - 1.0) < 1e-12);
  }
}

TEST_CASE("pairing closed form matches quadrature") {
  for (int q = 1; q <= 6; ++q) {
    for (double z : {-2.0, 0.0, 1.5}) {
      PairingCheck check = stein_hermite_pairing_check(q, z, 1e-11);
      CHECK(check.converged);
      CHECK(std::abs(check.closed_form - check.quadrature) < 1e-9);
    }
  }
}

TEST_CASE("pairing special case at q = 1") {
  // int f_z'(x) x pdf(x) dx = H_2(z) pdf(z) / 3
  for (double z : {-1.0, 0.4, 2.1}) {
    CHECK(stein_hermite_pairing(1, z) ==
          doctest::Approx((z * z - 1.0) * normal_pdf(z) / 3.0).epsilon(1e-12));
  }
}
