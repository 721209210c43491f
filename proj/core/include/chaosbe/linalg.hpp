#pragma once

#include <cstddef>
#include <vector>

namespace chaosbe {

/// Row-major dense matrix with just enough operations for trace formulas,
/// covariance factors and blocked replica generation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }

  double trace() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> d_;
};

/// C = A * B, cache-friendly ikj loop, optionally threaded over row blocks.
Matrix multiply(const Matrix& a, const Matrix& b, unsigned workers = 1);

/// In-place lower Cholesky factor of a symmetric positive definite matrix.
/// Returns false (leaving `a` unspecified) when a pivot is non-positive.
bool cholesky_lower(Matrix& a);

/// y = L * x with L lower-triangular (upper part ignored).
void lower_tri_matvec(const Matrix& l, const double* x, double* y);

}  // namespace chaosbe
