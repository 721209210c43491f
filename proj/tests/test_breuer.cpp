#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "chaosbe/breuer_major.hpp"
#include "chaosbe/chaos2.hpp"
#include "chaosbe/quadrature.hpp"
#include "chaosbe/random.hpp"

using namespace chaosbe;

TEST_CASE("increment covariance closed-form values") {
  // rho(0) = 1 always; rho(1) = (2^(2H) - 2) / 2.
  for (double h : {0.1, 0.3, 0.45, 0.5}) CHECK(fbm_rho(h, 0.0) == doctest::Approx(1.0));
  CHECK(fbm_rho(0.3, 1.0) ==
        doctest::Approx((std::pow(2.0, 0.6) - 2.0) / 2.0).epsilon(1e-14));
  CHECK(fbm_rho(0.5, 1.0) == doctest::Approx(0.0));
  // H = 1/2: triangular kernel max(1 - |x|, 0)
  CHECK(fbm_rho(0.5, 0.25) == doctest::Approx(0.75));
  CHECK(fbm_rho(0.5, 3.0) == doctest::Approx(0.0));
  // evenness
  for (double x : {0.3, 1.7, 4.2})
    CHECK(fbm_rho(0.3, x) == doctest::Approx(fbm_rho(0.3, -x)).epsilon(1e-14));
  CHECK_THROWS(fbm_rho(0.0, 1.0));
  CHECK_THROWS(fbm_rho(1.0, 1.0));
}

TEST_CASE("model validation") {
  validate_model(FbmModel{0.3, 2, 200.0, 0.25});
  validate_model(FbmModel{0.5, 4, 100.0, 0.5});
  CHECK_THROWS(validate_model(FbmModel{0.6, 2, 200.0, 0.25}));
  CHECK_THROWS(validate_model(FbmModel{0.3, 3, 200.0, 0.25}));   // odd order
  CHECK_THROWS(validate_model(FbmModel{0.3, 0, 200.0, 0.25}));
  CHECK_THROWS(validate_model(FbmModel{0.3, 2, -5.0, 0.25}));
  CHECK_THROWS(validate_model(FbmModel{0.3, 2, 200.0, 0.3}));    // T/delta not integral
}

TEST_CASE("asymptotic variance closed forms at hurst one half") {
  // rho is the triangle kernel, so sigma^2(inf) = q! int rho^q has the exact
  // values 2! * 2/3 = 4/3 (q = 2) and 4! * 2/5 = 48/5 (q = 4).
  VarianceConstants v2 = variance_constants(FbmModel{0.5, 2, 100.0, 0.25});
  CHECK(v2.converged);
  CHECK(v2.sigma2_inf == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  VarianceConstants v4 = variance_constants(FbmModel{0.5, 4, 100.0, 0.25});
  CHECK(v4.converged);
  CHECK(v4.sigma2_inf == doctest::Approx(9.6).epsilon(1e-9));
}

TEST_CASE("finite-horizon variance approaches the limit from below") {
  FbmModel m{0.3, 2, 50.0, 0.25};
  VarianceConstants v50 = variance_constants(m);
  m.horizon = 200.0;
  VarianceConstants v200 = variance_constants(m);
  m.horizon = 1000.0;
  VarianceConstants v1000 = variance_constants(m);
  CHECK(v50.sigma2_T < v200.sigma2_T);
  CHECK(v200.sigma2_T < v1000.sigma2_T);
  CHECK(v1000.sigma2_T < v1000.sigma2_inf);
  CHECK(v1000.sigma2_T == doctest::Approx(v1000.sigma2_inf).epsilon(0.02));
}

TEST_CASE("one-dimensional variance reduction matches the direct double integral") {
  for (double h : {0.3, 0.45}) {
    FbmModel m{h, 2, 5.0, 0.25};
    VarianceConstants v = variance_constants(m);
    double direct = sigma2_T_direct(m);
    CHECK(std::abs(v.sigma2_T - direct) < 1e-8 * std::max(1.0, direct));
  }
}

TEST_CASE("limit constants: sign, convergence, and a brute-force cross check") {
  FbmModel m{0.5, 2, 200.0, 0.25};
  BreuerMajorConstants c = limit_constants(m, 1e-7);
  CHECK(c.converged);
  CHECK(c.gamma_hat < 0.0);
  CHECK(c.curve_coefficient == doctest::Approx(c.gamma_hat / 3.0));
  REQUIRE(c.sigma_hat_s2.size() == 1);  // q = 2 has the single piece s = 1
  CHECK(c.sigma_hat_s2[0] > 0.0);

  // Brute-force the double product integral J = int E(y) rho(y) dy with
  // E(y) = int rho(x) rho(x - y) dx over the compact support [-1, 1].
  auto rho = [](double x) { return fbm_rho(0.5, x); };
  auto inner = [&](double y) {
    return integrate([&](double x) { return rho(x) * rho(x - y); }, -1.0, 2.0, 1e-11).value;
  };
  double j_val = integrate([&](double y) { return inner(y) * rho(y); }, -1.0, 1.0, 1e-9).value;
  // gamma_hat = -q! (q/2)! C(q, q/2)^2 / (2 sigma^3) * J at q = 2:
  double sigma3 = std::pow(c.sigma2_inf, 1.5);
  double expected = -2.0 * 1.0 * 4.0 / (2.0 * sigma3) * j_val;
  CHECK(c.gamma_hat == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("limit constants converge at rough hurst parameters") {
  BreuerMajorConstants c = limit_constants(FbmModel{0.3, 2, 200.0, 0.25}, 1e-6);
  CHECK(c.converged);
  CHECK(c.error_estimate < 1e-4);
  CHECK(c.gamma_hat < 0.0);
  BreuerMajorConstants c4 = limit_constants(FbmModel{0.35, 4, 200.0, 0.25}, 1e-6);
  CHECK(c4.converged);
  REQUIRE(c4.sigma_hat_s2.size() == 3);
  for (double piece : c4.sigma_hat_s2) CHECK(piece > 0.0);
}

TEST_CASE("increment field reproduces the target lag correlations") {
  FbmModel m{0.3, 2, 4.0, 0.5};  // N = 8 increments
  IncrementField field(m);
  REQUIRE(field.size() == 8);
  RandomSource src(13, 0);
  std::size_t reps = 10000;
  std::vector<double> acc(3, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    std::vector<double> path = field.sample_path(src, r);
    for (int lag = 0; lag < 3; ++lag) acc[lag] += path[0] * path[lag];
  }
  for (int lag = 0; lag < 3; ++lag) {
    double target = fbm_rho(0.3, lag * 0.5);
    double se = 1.5 / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(acc[lag] / reps - target) < 5.0 * se);
  }
}

TEST_CASE("sampling is deterministic and worker-count independent") {
  FbmModel m{0.3, 2, 20.0, 0.25};
  IncrementField field(m);
  RandomSource src(101, 0);
  auto a = field.sample_zt(src, 0, 512, 1);
  auto b = field.sample_zt(src, 0, 512, 4);
  auto c = field.sample_zt(src, 0, 512, 8);
  CHECK(a == b);
  CHECK(a == c);
  // chunked draws agree with one contiguous draw
  auto head = field.sample_zt(src, 0, 256, 2);
  auto tail = field.sample_zt(src, 256, 256, 2);
  head.insert(head.end(), tail.begin(), tail.end());
  CHECK(a == head);
}

TEST_CASE("sampled functional has the exact discrete mean and variance") {
  FbmModel m{0.3, 2, 50.0, 0.25};
  // exact variance of the discretized, sigma(T)-normalized functional
  Chaos2Spectrum s = zt_spectrum(m);
  double var_exact = cumulant(s, 2);
  RandomSource src(55, 0);
  std::size_t n = 100000;
  auto z = sample_ZT(m, src, n, 4);
  double mean = 0.0, var = 0.0;
  for (double v : z) mean += v;
  mean /= n;
  for (double v : z) var += (v - mean) * (v - mean);
  var /= n - 1;
  double k4 = cumulant(s, 4);
  double mean_se = std::sqrt(var_exact / n);
  double var_se = std::sqrt((k4 + 2.0 * var_exact * var_exact) / n);
  CHECK(std::abs(mean) < 5.0 * mean_se);
  CHECK(std::abs(var - var_exact) < 5.0 * var_se);
  // the lattice inflates the variance at rough hurst; the exact spectrum
  // quantifies it (about 1.21 at delta = 0.25, hurst 0.3)
  CHECK(var_exact > 1.05);
  CHECK(var_exact < 1.35);
}

TEST_CASE("spectrum route and quadrature route agree on the skewness scale") {
  FbmModel m{0.3, 2, 200.0, 0.25};
  Chaos2CrossCheck chk = chaos2_cross_check(m);
  CHECK(chk.phi > 0.0);
  CHECK(chk.alpha > 0.0);       // gamma_hat < 0 makes -2 gamma/sigma positive
  CHECK(chk.predicted > 0.0);
  CHECK(std::abs(chk.alpha / chk.predicted - 1.0) < 0.10);
}

TEST_CASE("limit verification points carry coherent bookkeeping") {
  FbmModel m{0.3, 2, 50.0, 0.25};
  RandomSource src(7, 0);
  std::vector<double> horizons = {50.0, 100.0};
  std::vector<double> z_grid = {-1.0, 0.0, 1.0};
  LimitVerification v = verify_limit(m, horizons, z_grid, src, 20000, 4);
  REQUIRE(v.points.size() == horizons.size() * z_grid.size());
  REQUIRE(v.sqrt_t_dkol.size() == horizons.size());
  CHECK(v.gamma_hat < 0.0);
  for (const auto& p : v.points) {
    CHECK(p.standard_error > 0.0);
    // at z = 0 the predicted curve is (gamma_hat/3)(0 - 1) pdf(0) > 0
    if (p.z == 0.0) CHECK(p.predicted > 0.0);
  }
  for (double sd : v.sqrt_t_dkol) CHECK(sd > 0.0);
}
