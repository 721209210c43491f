#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace chaosbe {

/// Discretized kernel of order q on a uniform grid over [0, L]^q with m
/// points per axis (midpoints, mesh h = L/m). Values are stored dense,
/// row-major; the mesh weight stays metadata and is never folded into the
/// values, so inner products carry the weight h^q explicitly.
class GridTensor {
 public:
  GridTensor(int order, std::size_t m, double length);
  GridTensor(int order, std::size_t m, double length, std::vector<double> values);

  int order() const { return order_; }
  std::size_t grid_size() const { return m_; }
  double length() const { return length_; }
  double mesh() const { return length_ / static_cast<double>(m_); }
  std::size_t size() const { return values_.size(); }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double& at(const std::vector<std::size_t>& idx);
  double at(const std::vector<std::size_t>& idx) const;

  /// max over index permutations of the symmetry defect.
  double symmetry_defect() const;

  /// Builds an order-2 tensor by sampling k at grid midpoints.
  static GridTensor from_kernel2(std::size_t m, double length,
                                 const std::function<double(double, double)>& k);

 private:
  int order_;
  std::size_t m_;
  double length_;
  std::vector<double> values_;
};

/// L2-type pairing with mesh weight: h^q * sum(f * g). Orders must match.
double inner_product(const GridTensor& f, const GridTensor& g);
double norm(const GridTensor& f);

/// r-th contraction f (x)_r g: sums the trailing r indices of both tensors,
/// weighted by h^r. Result has order p+q-2r and is generally not symmetric.
/// r = 0 is the tensor product; r = p = q yields the scalar pairing as an
/// order-0 tensor.
GridTensor contract(const GridTensor& f, const GridTensor& g, int r);

/// Average over all k! index permutations. Idempotent. k <= 6.
GridTensor symmetrize(const GridTensor& t);

/// Coefficients of the product formula for multiple integrals:
/// (r, r! * C(p,r) * C(q,r)) for r = 0..min(p,q). Exact integer arithmetic.
std::vector<std::pair<int, double>> multiplication_coefficients(int p, int q);

struct ChaosVarianceReport {
  int q = 0;
  double chaos_norm = 0.0;                    // q! * ||f||^2
  std::vector<double> sym_contraction_norms;  // ||f (~x)_r f||, r = 1..q-1
  std::vector<double> raw_contraction_norms;  // ||f (x)_r f||,  r = 1..q-1
  double phi = 0.0;
  std::optional<double> rho;  // defined for even q with phi > 0; 0 for odd q
};

/// Variance / third-moment structure of the chaos element with kernel f:
/// phi^2 = (1 - q!||f||^2)^2
///         + q^2 sum_r (2q-2r)! ((r-1)!)^2 C(q-1,r-1)^4 ||f (~x)_r f||^2,
/// and, for even q, rho = -q q! (q/2-1)! C(q-1,q/2-1)^2 <f, f (~x)_{q/2} f> / phi.
ChaosVarianceReport chaos_variance_report(const GridTensor& f);

/// Diagnostics for the nested contraction norms
/// ||(f (~x)_r f) (x)_l (f (~x)_r f)||; entries that would exceed the dense
/// storage budget are skipped.
struct NestedContractionNorm {
  int r;
  int l;
  double value;
};
std::vector<NestedContractionNorm> nested_contraction_norms(const GridTensor& f);

}  // namespace chaosbe
