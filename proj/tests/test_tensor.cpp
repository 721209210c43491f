#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "chaosbe/grid_tensor.hpp"
#include "chaosbe/random.hpp"

using namespace chaosbe;

namespace {

GridTensor random_tensor2(std::size_t m, double length, RandomSource& rng) {
  GridTensor t(2, m, length);
  for (double& v : t.values()) v = rng.next_normal();
  return t;
}

GridTensor symmetric_random_tensor2(std::size_t m, double length, RandomSource& rng) {
  GridTensor t(2, m, length);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double v = rng.next_normal();
      t.at({i, j}) = v;
      t.at({j, i}) = v;
    }
  return t;
}

}  // namespace

TEST_CASE("inner product carries the mesh weight") {
  // f = g = 1 on [0, 2]^2 => h^2 * sum(1) = L^2 = 4.
  GridTensor f(2, 10, 2.0);
  for (double& v : f.values()) v = 1.0;
  CHECK(inner_product(f, f) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(norm(f) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("order-2 contraction agrees with weighted matrix products") {
  RandomSource rng(91, 0);
  std::size_t m = 12;
  double length = 3.0;
  double h = length / static_cast<double>(m);
  GridTensor f = random_tensor2(m, length, rng);
  GridTensor g = random_tensor2(m, length, rng);

  // r = 1: (f x_1 g)(i, j) = h * sum_k f(i, k) g(j, k).
  GridTensor c1 = contract(f, g, 1);
  REQUIRE(c1.order() == 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double direct = 0.0;
      for (std::size_t k = 0; k < m; ++k) direct += f.at({i, k}) * g.at({j, k});
      direct *= h;
      CHECK(c1.at({i, j}) == doctest::Approx(direct).epsilon(1e-12));
    }

  // r = 2 yields the scalar pairing.
  GridTensor c2 = contract(f, g, 2);
  REQUIRE(c2.order() == 0);
  REQUIRE(c2.size() == 1);
  CHECK(c2.values()[0] == doctest::Approx(inner_product(f, g)).epsilon(1e-12));

  // r = 0 is the tensor product.
  GridTensor c0 = contract(f, g, 0);
  REQUIRE(c0.order() == 4);
  CHECK(c0.at({1, 2, 3, 4}) ==
        doctest::Approx(f.at({1, 2}) * g.at({3, 4})).epsilon(1e-13));
}

TEST_CASE("contraction argument validation") {
  GridTensor f(2, 4, 1.0);
  GridTensor g(2, 4, 1.0);
  CHECK_THROWS(contract(f, g, 3));
  CHECK_THROWS(contract(f, g, -1));
  GridTensor other_grid(2, 5, 1.0);
  CHECK_THROWS(contract(f, other_grid, 1));
}

TEST_CASE("symmetrize averages index permutations and is idempotent") {
  RandomSource rng(7, 0);
  GridTensor f = random_tensor2(8, 1.0, rng);
  GridTensor s = symmetrize(f);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(s.at({i, j}) ==
            doctest::Approx(0.5 * (f.at({i, j}) + f.at({j, i}))).epsilon(1e-14));
  CHECK(s.symmetry_defect() < 1e-13);
  GridTensor ss = symmetrize(s);
  for (std::size_t k = 0; k < s.size(); ++k)
    CHECK(ss.values()[k] == doctest::Approx(s.values()[k]).epsilon(1e-14));
  CHECK(f.symmetry_defect() > 0.1);  // a random tensor is far from symmetric
}

TEST_CASE("multiplication coefficients are exact") {
  auto c22 = multiplication_coefficients(2, 2);
  REQUIRE(c22.size() == 3);
  CHECK(c22[0] == std::pair<int, double>(0, 1.0));
  CHECK(c22[1] == std::pair<int, double>(1, 4.0));
  CHECK(c22[2] == std::pair<int, double>(2, 2.0));

  auto c33 = multiplication_coefficients(3, 3);
  REQUIRE(c33.size() == 4);
  CHECK(c33[1].second == doctest::Approx(9.0));    // 1! * C(3,1)^2
  CHECK(c33[2].second == doctest::Approx(18.0));   // 2! * C(3,2)^2
  CHECK(c33[3].second == doctest::Approx(6.0));    // 3! * C(3,3)^2

  auto c42 = multiplication_coefficients(4, 2);
  REQUIRE(c42.size() == 3);
  CHECK(c42[1].second == doctest::Approx(8.0));    // 1! * C(4,1) * C(2,1)
  CHECK(c42[2].second == doctest::Approx(12.0));   // 2! * C(4,2) * C(2,2)
}

TEST_CASE("variance report at q = 2 agrees with the eigenvalue route") {
  RandomSource rng(23, 0);
  std::size_t m = 20;
  double length = 1.0;
  double h = length / static_cast<double>(m);
  GridTensor f = symmetric_random_tensor2(m, length, rng);
  // normalize so 2 ||f||^2 = 1 (unit variance of the chaos element)
  double scale = 1.0 / std::sqrt(2.0) / norm(f);
  for (double& v : f.values()) v *= scale;

  ChaosVarianceReport rep = chaos_variance_report(f);
  CHECK(rep.q == 2);
  CHECK(rep.chaos_norm == doctest::Approx(1.0).epsilon(1e-12));

  // Eigenvalue route: lambda_i = h * eig_i of the value matrix; then
  // kappa_3 = 8 sum lambda^3, kappa_4 = 48 sum lambda^4,
  // phi^2 = kappa_4 / 6 + (kappa_2 - 1)^2, rho = -kappa_3 / (2 phi).
  // For q=2 the single contraction norm obeys
  // 4 ||f x_1 f||^2 = kappa_4 / 6 and <f, f x_1 f> = sum lambda^3 * h-weighting.
  // We avoid eigen decomposition here and use power traces instead:
  // Tr[(hA)^p] = sum lambda^p with A the value matrix.
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i * m + j] = h * f.at({i, j});
  auto mat_mul = [m](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) z[i * m + j] += x[i * m + k] * y[k * m + j];
    return z;
  };
  auto trace = [m](const std::vector<double>& x) {
    double t = 0.0;
    for (std::size_t i = 0; i < m; ++i) t += x[i * m + i];
    return t;
  };
  std::vector<double> a2 = mat_mul(a, a);
  std::vector<double> a3 = mat_mul(a2, a);
  std::vector<double> a4 = mat_mul(a2, a2);
  double kappa2 = 2.0 * trace(a2);
  double kappa3 = 8.0 * trace(a3);
  double kappa4 = 48.0 * trace(a4);
  double phi = std::sqrt(kappa4 / 6.0 + (kappa2 - 1.0) * (kappa2 - 1.0));
  CHECK(rep.phi == doctest::Approx(phi).epsilon(1e-10));
  REQUIRE(rep.rho.has_value());
  CHECK(*rep.rho == doctest::Approx(-kappa3 / (2.0 * phi)).epsilon(1e-10));
}

TEST_CASE("nested contraction norms skip oversized intermediates") {
  RandomSource rng(5, 0);
  GridTensor f = symmetric_random_tensor2(10, 1.0, rng);
  auto norms = nested_contraction_norms(f);
  CHECK(!norms.empty());
  for (const auto& n : norms) {
    CHECK(n.value >= 0.0);
    CHECK(n.r >= 1);
    CHECK(n.r <= 1);  // q = 2 has a single interior contraction order
  }
}
