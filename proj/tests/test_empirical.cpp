#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chaosbe/empirical.hpp"
#include "chaosbe/random.hpp"
#include "chaosbe/stein.hpp"

using namespace chaosbe;

TEST_CASE("kolmogorov distance on a tiny explicit sample") {
  // Sample {-1, 0, 1}: the empirical CDF steps 0 -> 1/3 -> 2/3 -> 1. The
  // largest gap against Phi occurs just below x = 0: |1/3 - Phi(0)| is beaten
  // by the right-side gap at x = 1: |1 - Phi(1)| = 0.1586..., and the
  // left-side gap at 0: |1/3 - 0.5| = 0.1667. Exact value:
  double expected = 0.5 - 1.0 / 3.0;
  double left1 = std::abs(2.0 / 3.0 - normal_cdf(1.0));      // 0.1747
  expected = std::max({expected, left1, std::abs(1.0 - normal_cdf(1.0)),
                       std::abs(normal_cdf(-1.0) - 0.0),
                       std::abs(normal_cdf(-1.0) - 1.0 / 3.0)});
  CHECK(kolmogorov_distance({-1.0, 0.0, 1.0}) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(kolmogorov_distance({-1.0, 0.0, 1.0}) == doctest::Approx(0.17467778).epsilon(1e-6));
}

TEST_CASE("kolmogorov distance is order independent and bounded") {
  std::vector<double> x = {2.0, -0.5, 0.1, -1.7, 0.9};
  std::vector<double> y = x;
  std::sort(y.begin(), y.end());
  CHECK(kolmogorov_distance(x) == doctest::Approx(kolmogorov_distance(y)));
  CHECK(kolmogorov_distance(x) <= 1.0);
  CHECK(kolmogorov_distance(x) > 0.0);
  CHECK_THROWS(kolmogorov_distance({}));
}

TEST_CASE("kolmogorov distance of a genuinely normal sample is small") {
  RandomSource src(17, 0);
  std::size_t n = 100000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = src.normal_at(i);
  double d = kolmogorov_distance(x);
  CHECK(d < dkw_radius(n, 1e-6));
}

TEST_CASE("dkw radius closed form") {
  CHECK(dkw_radius(1000, 0.01) ==
        doctest::Approx(std::sqrt(std::log(200.0) / 2000.0)).epsilon(1e-14));
  CHECK(dkw_radius(4000, 0.01) == doctest::Approx(0.5 * dkw_radius(1000, 0.01)).epsilon(1e-14));
  CHECK_THROWS(dkw_radius(0, 0.01));
  CHECK_THROWS(dkw_radius(10, 0.0));
}

TEST_CASE("empirical cdf on a sorted sample") {
  std::vector<double> s = {-2.0, -1.0, 0.0, 1.0, 2.0};
  CHECK(empirical_cdf(s, -3.0) == 0.0);
  CHECK(empirical_cdf(s, -2.0) == doctest::Approx(0.2));
  CHECK(empirical_cdf(s, -0.5) == doctest::Approx(0.4));
  CHECK(empirical_cdf(s, 2.0) == doctest::Approx(1.0));
  CHECK(empirical_cdf(s, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("ratio curve reproduces the normalized cdf gap") {
  std::vector<double> x = {-1.5, -0.5, 0.0, 0.4, 1.2, 2.0};
  double phi = 0.25;
  std::vector<double> grid = {-1.0, 0.0, 1.0};
  auto curve = ratio_curve(x, phi, grid, 0.3);
  REQUIRE(curve.size() == 3);
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double z = grid[i];
    double p = empirical_cdf(sorted, z);
    CHECK(curve[i].z == doctest::Approx(z));
    CHECK(curve[i].ratio == doctest::Approx((p - normal_cdf(z)) / phi).epsilon(1e-12));
    double c = normal_cdf(z);
    double se = std::sqrt(c * (1.0 - c) / x.size()) / phi;
    CHECK(curve[i].standard_error == doctest::Approx(se).epsilon(1e-12));
    double pred = 0.3 / 3.0 * (z * z - 1.0) * normal_pdf(z);
    CHECK(curve[i].predicted == doctest::Approx(pred).epsilon(1e-12));
  }
  // the predicted curve vanishes exactly at z = +-1
  CHECK(curve[0].predicted == doctest::Approx(0.0));
  CHECK(curve[2].predicted == doctest::Approx(0.0));
}

TEST_CASE("ratio curve without rho reports zero prediction") {
  auto curve = ratio_curve({0.0, 1.0}, 1.0, {0.5});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].predicted == 0.0);
}

TEST_CASE("empirical study bundles the pieces consistently") {
  RandomSource src(5, 0);
  std::size_t n = 20000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = src.normal_at(i);
  std::vector<double> grid = {-2.0, -1.0, 0.0, 1.0, 2.0};
  EmpiricalStudy st = empirical_study(x, 0.5, grid, 0.01, -0.1);
  CHECK(st.n == n);
  CHECK(st.d_kol == doctest::Approx(kolmogorov_distance(x)));
  CHECK(st.dkw == doctest::Approx(dkw_radius(n, 0.01)));
  REQUIRE(st.curve.size() == grid.size());
  auto direct = ratio_curve(x, 0.5, grid, -0.1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(st.curve[i].ratio == doctest::Approx(direct[i].ratio));
    CHECK(st.curve[i].predicted == doctest::Approx(direct[i].predicted));
  }
}
