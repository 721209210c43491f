#include "chaosbe/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chaosbe {

SymmetricMatrix::SymmetricMatrix(std::size_t dim)
    : dim_(dim), data_(dim * (dim + 1) / 2, 0.0) {
  if (dim < 1) throw std::invalid_argument("SymmetricMatrix: dim must be >= 1");
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> a(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) a[i * dim_ + j] = a[j * dim_ + i] = (*this)(i, j);
  return a;
}

namespace {

// Cyclic Jacobi on a full row-major buffer. `vecs` may be null.
void jacobi(std::vector<double>& a, std::size_t n, std::vector<double>* vecs,
            const std::string& label) {
  if (n > 5000) throw std::invalid_argument("eigenvalues_symmetric: dim > 5000 (" + label + ")");
  if (vecs) {
    vecs->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*vecs)[i * n + i] = 1.0;
  }
  if (n == 1) return;

  double frob = 0.0;
  for (double v : a) frob += v * v;
  frob = std::sqrt(frob);
  const double stop = 1e-14 * std::max(frob, 1e-300);
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
    off = std::sqrt(off);
    if (off <= stop) return;

    // Rotations below this threshold cannot reduce off(A) meaningfully this sweep.
    const double thresh = off / (n * 2.0);

    for (std::size_t p = 0; p + 1 < n; ++p) {
      double* rp = a.data() + p * n;
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = rp[q];
        if (std::abs(apq) <= thresh * 1e-4) continue;
        double app = rp[p];
        double* rq = a.data() + q * n;
        double aqq = rq[q];

        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          double akp = rp[k], akq = rq[k];
          rp[k] = c * akp - s * akq;
          rq[k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[k * n + p], aqk = a[k * n + q];
          a[k * n + p] = c * apk - s * aqk;
          a[k * n + q] = s * apk + c * aqk;
        }
        if (vecs) {
          for (std::size_t k = 0; k < n; ++k) {
            double vkp = (*vecs)[k * n + p], vkq = (*vecs)[k * n + q];
            (*vecs)[k * n + p] = c * vkp - s * vkq;
            (*vecs)[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  // One final convergence check before declaring failure.
  double off = 0.0;
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
  if (std::sqrt(off) > stop * 100.0)
    throw std::runtime_error("eigenvalues_symmetric: Jacobi sweeps did not converge for " + label);
}

std::vector<std::size_t> abs_descending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(v[i]) > std::abs(v[j]);
  });
  return idx;
}

}  // namespace

std::vector<double> eigenvalues_symmetric_dense(std::vector<double> dense, std::size_t n,
                                                const std::string& label) {
  jacobi(dense, n, nullptr, label);
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = dense[i * n + i];
  std::sort(ev.begin(), ev.end(),
            [](double x, double y) { return std::abs(x) > std::abs(y); });
  return ev;
}

std::vector<double> eigenvalues_symmetric(const SymmetricMatrix& m, const std::string& label) {
  return eigenvalues_symmetric_dense(m.to_dense(), m.dim(), label);
}

EigenDecomposition eigen_symmetric(const SymmetricMatrix& m, const std::string& label) {
  std::size_t n = m.dim();
  std::vector<double> a = m.to_dense();
  std::vector<double> vecs;
  jacobi(a, n, &vecs, label);

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = a[i * n + i];
  auto order = abs_descending_order(raw);

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = raw[order[j]];
    for (std::size_t k = 0; k < n; ++k)
      out.eigenvectors[k * n + j] = vecs[k * n + order[j]];
  }
  return out;
}

}  // namespace chaosbe
