#include "chaosbe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace chaosbe {

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

namespace {
void multiply_rows(const Matrix& a, const Matrix& b, Matrix& c,
                   std::size_t r0, std::size_t r1) {
  const std::size_t k_n = a.cols(), n = b.cols();
  for (std::size_t i = r0; i < r1; ++i) {
    double* ci = c.data() + i * n;
    const double* ai = a.data() + i * k_n;
    for (std::size_t k = 0; k < k_n; ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}
}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b, unsigned workers) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  if (workers <= 1 || a.rows() < 64) {
    multiply_rows(a, b, c, 0, a.rows());
    return c;
  }
  std::vector<std::thread> threads;
  std::size_t chunk = (a.rows() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t r0 = std::min<std::size_t>(w * chunk, a.rows());
    std::size_t r1 = std::min<std::size_t>(r0 + chunk, a.rows());
    if (r0 < r1) threads.emplace_back(multiply_rows, std::cref(a), std::cref(b),
                                      std::ref(c), r0, r1);
  }
  for (auto& t : threads) t.join();
  return c;
}

bool cholesky_lower(Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky_lower: not square");
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      const double* ri = a.data() + i * n;
      const double* rj = a.data() + j * n;
      for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
      a(i, j) = s / ljj;
    }
    for (std::size_t k = j + 1; k < n; ++k) a(j, k) = 0.0;
  }
  return true;
}

void lower_tri_matvec(const Matrix& l, const double* x, double* y) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = l.data() + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += ri[j] * x[j];
    y[i] = s;
  }
}

}  // namespace chaosbe
