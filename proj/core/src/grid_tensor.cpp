#include "chaosbe/grid_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chaosbe {

namespace {

constexpr std::size_t kValueBudget = 10'000'000;

std::size_t checked_size(int order, std::size_t m) {
  std::size_t s = 1;
  for (int i = 0; i < order; ++i) {
    if (m != 0 && s > kValueBudget / m)
      throw std::invalid_argument("GridTensor: m^q exceeds the dense storage budget");
    s *= m;
  }
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

unsigned long long binomial_u(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / i;
  return r;
}

unsigned long long factorial_u(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

}  // namespace

GridTensor::GridTensor(int order, std::size_t m, double length)
    : order_(order), m_(m), length_(length), values_(checked_size(order, m), 0.0) {
  if (order < 0) throw std::invalid_argument("GridTensor: order must be >= 0");
  if (m < 1) throw std::invalid_argument("GridTensor: grid size must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("GridTensor: length must be > 0");
}

GridTensor::GridTensor(int order, std::size_t m, double length, std::vector<double> values)
    : GridTensor(order, m, length) {
  if (values.size() != values_.size())
    throw std::invalid_argument("GridTensor: value count does not match m^q");
  values_ = std::move(values);
}

double& GridTensor::at(const std::vector<std::size_t>& idx) {
  std::size_t lin = 0;
  for (std::size_t d : idx) lin = lin * m_ + d;
  return values_[lin];
}

double GridTensor::at(const std::vector<std::size_t>& idx) const {
  return const_cast<GridTensor*>(this)->at(idx);
}

double GridTensor::symmetry_defect() const {
  if (order_ <= 1) return 0.0;
  std::vector<int> perm(order_);
  std::iota(perm.begin(), perm.end(), 0);
  double worst = 0.0;
  std::vector<std::size_t> digits(order_);
  for (std::size_t lin = 0; lin < values_.size(); ++lin) {
    std::size_t rest = lin;
    for (int d = order_ - 1; d >= 0; --d) {
      digits[d] = rest % m_;
      rest /= m_;
    }
    std::vector<int> p = perm;
    do {
      std::size_t plin = 0;
      for (int d = 0; d < order_; ++d) plin = plin * m_ + digits[p[d]];
      worst = std::max(worst, std::abs(values_[lin] - values_[plin]));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return worst;
}

GridTensor GridTensor::from_kernel2(std::size_t m, double length,
                                    const std::function<double(double, double)>& k) {
  GridTensor t(2, m, length);
  const double h = t.mesh();
  for (std::size_t i = 0; i < m; ++i) {
    double x = (static_cast<double>(i) + 0.5) * h;
    for (std::size_t j = 0; j <= i; ++j) {
      double y = (static_cast<double>(j) + 0.5) * h;
      double v = k(x, y);
      t.values()[i * m + j] = v;
      t.values()[j * m + i] = v;
    }
  }
  return t;
}

double inner_product(const GridTensor& f, const GridTensor& g) {
  if (f.order() != g.order() || f.grid_size() != g.grid_size() || f.length() != g.length())
    throw std::invalid_argument("inner_product: tensor shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.values()[i] * g.values()[i];
  return s * std::pow(f.mesh(), f.order());
}

double norm(const GridTensor& f) { return std::sqrt(inner_product(f, f)); }

GridTensor contract(const GridTensor& f, const GridTensor& g, int r) {
  if (f.grid_size() != g.grid_size() || f.length() != g.length())
    throw std::invalid_argument("contract: grid mismatch");
  const int p = f.order(), q = g.order();
  if (r < 0 || r > std::min(p, q)) throw std::invalid_argument("contract: invalid r");

  const std::size_t m = f.grid_size();
  std::size_t mr = 1;
  for (int i = 0; i < r; ++i) mr *= m;
  const std::size_t fa = f.size() / mr;  // free block of f
  const std::size_t gb = g.size() / mr;  // free block of g

  GridTensor out(p + q - 2 * r, m, f.length());
  const double w = std::pow(f.mesh(), r);

  // f laid out as (fa x mr), g as (gb x mr): out = f * g^T, scaled by h^r.
  for (std::size_t i = 0; i < fa; ++i) {
    const double* fi = f.values().data() + i * mr;
    double* oi = out.values().data() + i * gb;
    for (std::size_t j = 0; j < gb; ++j) {
      const double* gj = g.values().data() + j * mr;
      double s = 0.0;
      for (std::size_t k = 0; k < mr; ++k) s += fi[k] * gj[k];
      oi[j] += w * s;
    }
  }
  return out;
}

GridTensor symmetrize(const GridTensor& t) {
  const int k = t.order();
  if (k > 6) throw std::invalid_argument("symmetrize: order > 6");
  if (k <= 1) return t;

  const std::size_t m = t.grid_size();
  GridTensor out(k, m, t.length());
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 0);
  const double inv_kfact = 1.0 / factorial(k);

  std::vector<std::size_t> digits(k);
  for (std::size_t lin = 0; lin < t.size(); ++lin) {
    std::size_t rest = lin;
    for (int d = k - 1; d >= 0; --d) {
      digits[d] = rest % m;
      rest /= m;
    }
    double acc = 0.0;
    std::vector<int> p = base;
    do {
      std::size_t plin = 0;
      for (int d = 0; d < k; ++d) plin = plin * m + digits[p[d]];
      acc += t.values()[plin];
    } while (std::next_permutation(p.begin(), p.end()));
    out.values()[lin] = acc * inv_kfact;
  }
  return out;
}

std::vector<std::pair<int, double>> multiplication_coefficients(int p, int q) {
  if (p < 0 || q < 0 || p > 12 || q > 12)
    throw std::invalid_argument("multiplication_coefficients: orders must be in [0, 12]");
  std::vector<std::pair<int, double>> out;
  for (int r = 0; r <= std::min(p, q); ++r) {
    unsigned long long c = factorial_u(r) * binomial_u(p, r) * binomial_u(q, r);
    out.emplace_back(r, static_cast<double>(c));
  }
  return out;
}

ChaosVarianceReport chaos_variance_report(const GridTensor& f) {
  const int q = f.order();
  if (q < 2) throw std::invalid_argument("chaos_variance_report: order must be >= 2");

  ChaosVarianceReport rep;
  rep.q = q;
  rep.chaos_norm = factorial(q) * inner_product(f, f);

  double phi2 = (1.0 - rep.chaos_norm) * (1.0 - rep.chaos_norm);
  for (int r = 1; r <= q - 1; ++r) {
    GridTensor raw = contract(f, f, r);
    GridTensor sym = symmetrize(raw);
    double raw_n = norm(raw);
    double sym_n = norm(sym);
    rep.raw_contraction_norms.push_back(raw_n);
    rep.sym_contraction_norms.push_back(sym_n);
    double coef = factorial(2 * q - 2 * r) * factorial(r - 1) * factorial(r - 1) *
                  std::pow(static_cast<double>(binomial_u(q - 1, r - 1)), 4);
    phi2 += static_cast<double>(q) * static_cast<double>(q) * coef * sym_n * sym_n;
  }
  rep.phi = std::sqrt(phi2);

  if (q % 2 == 0) {
    GridTensor half = symmetrize(contract(f, f, q / 2));
    double pairing = inner_product(f, half);
    if (rep.phi > 0.0) {
      double b = static_cast<double>(binomial_u(q - 1, q / 2 - 1));
      rep.rho = -static_cast<double>(q) * factorial(q) * factorial(q / 2 - 1) * b * b *
                pairing / rep.phi;
    } else {
      rep.rho = std::nullopt;  // degenerate kernel
    }
  } else {
    rep.rho = 0.0;
  }
  return rep;
}

std::vector<NestedContractionNorm> nested_contraction_norms(const GridTensor& f) {
  const int q = f.order();
  std::vector<NestedContractionNorm> out;
  for (int r = 1; r <= q - 1; ++r) {
    std::size_t inter = 1;
    bool fits = true;
    for (int i = 0; i < 2 * (q - r) && fits; ++i) {
      if (inter > kValueBudget / f.grid_size()) fits = false;
      inter *= f.grid_size();
    }
    if (!fits) continue;
    GridTensor sym = symmetrize(contract(f, f, r));
    for (int l = 1; l <= 2 * (q - r) - 1; ++l) {
      std::size_t res = 1;
      bool ok = true;
      for (int i = 0; i < 2 * (2 * (q - r) - l) && ok; ++i) {
        if (res > kValueBudget / f.grid_size()) ok = false;
        res *= f.grid_size();
      }
      if (!ok) continue;
      out.push_back({r, l, norm(contract(sym, sym, l))});
    }
  }
  return out;
}

}  // namespace chaosbe
