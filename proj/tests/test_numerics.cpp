#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "chaosbe/linalg.hpp"
#include "chaosbe/quadrature.hpp"
#include "chaosbe/random.hpp"
#include "chaosbe/symmetric_matrix.hpp"

using namespace chaosbe;

TEST_CASE("adaptive quadrature on smooth integrands") {
  auto r = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-12);

  auto p = integrate([](double x) { return x * x * x * x * x * x; }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(p.value - 1.0 / 7.0) < 1e-13);
}

TEST_CASE("adaptive quadrature handles endpoint cusps") {
  auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("iterated 2-d quadrature") {
  auto r = integrate(Fn2([](double x, double y) { return x * y + 1.0; }), 0.0, 1.0, 0.0, 2.0,
                     1e-10);
  CHECK(std::abs(r.value - (0.5 * 2.0 + 2.0)) < 1e-9);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  const GaussRule& g = gauss_legendre(15);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    acc += g.weights[i] * std::pow(g.nodes[i], 28);
  CHECK(std::abs(acc - 2.0 / 29.0) < 1e-14);
}

TEST_CASE("composite rule splits at breakpoints") {
  GaussRule rule = composite_rule({0.0, 1.0, 3.0}, 12);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::abs(rule.nodes[i] - 1.0);
  CHECK(std::abs(acc - (0.5 + 2.0)) < 1e-13);
}

TEST_CASE("jacobi eigenvalues of a known matrix") {
  SymmetricMatrix m(2);
  m.set(0, 0, 2.0);
  m.set(1, 1, 2.0);
  m.set(1, 0, 1.0);
  auto eig = eigenvalues_symmetric(m);
  CHECK(std::abs(eig[0] - 3.0) < 1e-13);
  CHECK(std::abs(eig[1] - 1.0) < 1e-13);
}

TEST_CASE("jacobi eigenpairs satisfy the residual and invariants") {
  const std::size_t n = 40;
  RandomSource src(7, 0);
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, src.next_normal());
  EigenDecomposition ed = eigen_symmetric(m);

  double tr = 0.0, tr2 = 0.0, frob2 = 0.0;
  for (double lam : ed.eigenvalues) {
    tr += lam;
    tr2 += lam * lam;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob2 += m(i, j) * m(i, j);
  CHECK(std::abs(tr - m.trace()) < 1e-10);
  CHECK(std::abs(tr2 - frob2) < 1e-9);

  for (std::size_t k = 0; k < n; k += 7) {
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += m(i, j) * ed.eigenvectors[j * n + k];
      res = std::max(res, std::abs(av - ed.eigenvalues[k] * ed.eigenvectors[i * n + k]));
    }
    CHECK(res < 1e-10);
  }
}

TEST_CASE("eigenvalues sorted by descending magnitude") {
  SymmetricMatrix m(3);
  m.set(0, 0, -5.0);
  m.set(1, 1, 0.5);
  m.set(2, 2, 2.0);
  auto eig = eigenvalues_symmetric(m);
  CHECK(eig[0] == doctest::Approx(-5.0));
  CHECK(eig[1] == doctest::Approx(2.0));
  CHECK(eig[2] == doctest::Approx(0.5));
}

TEST_CASE("counter-based source is reproducible and worker independent") {
  RandomSource a(123, 5), b(123, 5), c(123, 6);
  CHECK(a.normal_at(17) == b.normal_at(17));
  CHECK(a.normal_at(17) != c.normal_at(17));
  CHECK(a.substream(3).normal_at(0) == b.substream(3).normal_at(0));

  double u = a.uniform_at(99);
  CHECK(u > 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("normal source moments") {
  RandomSource src(2024, 0);
  const std::size_t n = 200000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = src.normal_at(i);
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  CHECK(std::abs(m1) < 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(m2 - 1.0) < 0.02);
  CHECK(std::abs(m4 - 3.0) < 0.15);
}

TEST_CASE("normal quantile inverts the cdf") {
  for (double p : {1e-12, 1e-6, 0.025, 0.4, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
    double z = inverse_normal_cdf(p);
    CHECK(std::abs(0.5 * std::erfc(-z / std::numbers::sqrt2) - p) < 1e-13 * std::max(1.0, 1.0 / p) * p + 1e-15);
  }
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0));
}

TEST_CASE("matrix multiply agrees with hand result and threading") {
  Matrix a(2, 3), b(3, 2);
  double va[] = {1, 2, 3, 4, 5, 6}, vb[] = {7, 8, 9, 10, 11, 12};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = va[i * 3 + j];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) b(i, j) = vb[i * 2 + j];
  Matrix c = multiply(a, b);
  CHECK(c(0, 0) == doctest::Approx(58));
  CHECK(c(1, 1) == doctest::Approx(154));

  const std::size_t n = 96;
  Matrix big(n, n), other(n, n);
  RandomSource src(9, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big(i, j) = src.next_normal();
      other(i, j) = src.next_normal();
    }
  Matrix one = multiply(big, other, 1);
  Matrix four = multiply(big, other, 4);
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(one(i, j) - four(i, j)));
  CHECK(diff == 0.0);
}

TEST_CASE("cholesky factor reproduces an SPD matrix") {
  const std::size_t n = 30;
  RandomSource src(31, 0);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = src.next_normal();
  Matrix spd(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += g(i, k) * g(j, k);
      spd(i, j) = acc + (i == j ? 0.5 : 0.0);
    }
  Matrix l = spd;
  REQUIRE(cholesky_lower(l));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) acc += l(i, k) * l(j, k);
      worst = std::max(worst, std::abs(acc - spd(i, j)));
    }
  CHECK(worst < 1e-10);

  Matrix indef(2, 2);
  indef(0, 0) = 1.0;
  indef(0, 1) = indef(1, 0) = 3.0;
  indef(1, 1) = 1.0;
  CHECK_FALSE(cholesky_lower(indef));
}
