#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace chaosbe {

/// Dense symmetric matrix. Only the lower triangle is stored, so symmetry
/// is exact by construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t dim);

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[pack(i, j)];
  }
  void set(std::size_t i, std::size_t j, double v) { data_[pack(i, j)] = v; }

  double trace() const;

  /// Expands to a full row-major dim*dim array.
  std::vector<double> to_dense() const;

 private:
  static std::size_t pack_impl(std::size_t r, std::size_t c) {
    return r * (r + 1) / 2 + c;  // r >= c
  }
  std::size_t pack(std::size_t i, std::size_t j) const {
    return i >= j ? pack_impl(i, j) : pack_impl(j, i);
  }

  std::size_t dim_;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;   // descending by absolute value
  std::vector<double> eigenvectors;  // column j (row-major, dim*dim) pairs with eigenvalues[j]
};

/// Eigenvalues by cyclic Jacobi rotations, sorted descending by |lambda|.
/// Throws std::runtime_error naming `label` if the sweep budget is exhausted.
std::vector<double> eigenvalues_symmetric(const SymmetricMatrix& m,
                                          const std::string& label = "symmetric matrix");

EigenDecomposition eigen_symmetric(const SymmetricMatrix& m,
                                   const std::string& label = "symmetric matrix");

/// Same solver on a full row-major buffer (destroys the input copy internally).
std::vector<double> eigenvalues_symmetric_dense(std::vector<double> dense, std::size_t n,
                                                const std::string& label = "symmetric matrix");

}  // namespace chaosbe
