#include "chaosbe/chaos2.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "chaosbe/linalg.hpp"
#include "chaosbe/symmetric_matrix.hpp"

namespace chaosbe {

namespace {
double two_pow_fact(int p) {  // 2^(p-1) (p-1)!
  double v = 1.0;
  for (int i = 1; i < p; ++i) v *= 2.0 * i;
  return v;
}
}  // namespace

Chaos2Spectrum spectrum(const GridTensor& f) {
  if (f.order() != 2) throw std::invalid_argument("spectrum: order-2 tensor required");
  const std::size_t m = f.grid_size();
  const double h = f.mesh();
  std::vector<double> dense(m * m);
  for (std::size_t i = 0; i < m * m; ++i) dense[i] = h * f.values()[i];
  Chaos2Spectrum s;
  s.eigenvalues = eigenvalues_symmetric_dense(std::move(dense), m, "chaos kernel operator");
  s.mesh = h;
  return s;
}

double cumulant(const Chaos2Spectrum& s, int p) {
  if (p < 1) throw std::invalid_argument("cumulant: p must be >= 1");
  if (p == 1) return 0.0;  // centered by construction
  double power_sum = 0.0;
  for (double l : s.eigenvalues) power_sum += std::pow(l, p);
  return two_pow_fact(p) * power_sum;
}

double cumulant_trace_route(const GridTensor& f, int p) {
  if (f.order() != 2) throw std::invalid_argument("cumulant_trace_route: order-2 required");
  if (p < 1) throw std::invalid_argument("cumulant_trace_route: p must be >= 1");
  if (p == 1) return 0.0;
  const std::size_t m = f.grid_size();
  const double h = f.mesh();
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = h * f.values()[i * m + j];
  Matrix power = a;
  for (int k = 2; k <= p; ++k) power = multiply(power, a);
  return two_pow_fact(p) * power.trace();
}

NormalApproxReport normal_approx_report(const Chaos2Spectrum& s) {
  NormalApproxReport r;
  r.kappa2 = cumulant(s, 2);
  r.kappa3 = cumulant(s, 3);
  r.kappa4 = cumulant(s, 4);
  r.kappa8 = cumulant(s, 8);
  r.phi = std::sqrt(r.kappa4 / 6.0 + (r.kappa2 - 1.0) * (r.kappa2 - 1.0));
  r.kolmogorov_bound = r.phi;
  if (r.phi > 0.0) {
    r.alpha = r.kappa3 / r.phi;
    r.eighth_ratio = r.kappa8 / (r.phi * r.phi * r.phi * r.phi);
  }
  r.edgeworth_coefficient = -r.kappa3 / 6.0;
  return r;
}

double limit_curve(double alpha, double z) {
  return alpha / 6.0 * (1.0 - z * z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

Chaos2Spectrum standardize(const Chaos2Spectrum& s) {
  double k2 = cumulant(s, 2);
  if (k2 < 1e-14) throw std::invalid_argument("standardize: kappa2 below 1e-14");
  Chaos2Spectrum out = s;
  const double scale = 1.0 / std::sqrt(k2);
  for (double& l : out.eigenvalues) l *= scale;
  return out;
}

std::vector<double> sample(const Chaos2Spectrum& s, const RandomSource& src, std::size_t n,
                           unsigned workers) {
  std::vector<double> out(n);
  const std::size_t m = s.size();
  auto run = [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const std::uint64_t base = static_cast<std::uint64_t>(i) * m;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        double xi = src.normal_at(base + j);
        acc += s.eigenvalues[j] * (xi * xi - 1.0);
      }
      out[i] = acc;
    }
  };
  if (workers <= 1 || n < 1024) {
    run(0, n);
  } else {
    std::vector<std::thread> threads;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t i0 = std::min<std::size_t>(w * chunk, n);
      std::size_t i1 = std::min<std::size_t>(i0 + chunk, n);
      if (i0 < i1) threads.emplace_back(run, i0, i1);
    }
    for (auto& t : threads) t.join();
  }
  return out;
}

MomentIdentityCheck malliavin_moment_check(const Chaos2Spectrum& s, const RandomSource& src,
                                           std::size_t n, int s_exp) {
  if (s_exp < 0 || s_exp > 3)
    throw std::invalid_argument("malliavin_moment_check: s must be in {0,1,2,3}");
  if (n < 1) throw std::invalid_argument("malliavin_moment_check: n must be >= 1");

  const std::size_t m = s.size();
  const double rhs_factor = 2.0 / (s_exp + 1.0);

  double sum_l = 0.0, sum_l2 = 0.0;
  double sum_r = 0.0, sum_r2 = 0.0;
  double sum_d = 0.0, sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * m;
    double f = 0.0, grad2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double xi = src.normal_at(base + j);
      double l = s.eigenvalues[j];
      f += l * (xi * xi - 1.0);
      grad2 += 4.0 * l * l * xi * xi;
    }
    double fs = std::pow(f, s_exp);
    double lhs_i = fs * grad2;
    double rhs_i = rhs_factor * fs * f * f;
    sum_l += lhs_i;
    sum_l2 += lhs_i * lhs_i;
    sum_r += rhs_i;
    sum_r2 += rhs_i * rhs_i;
    double d = lhs_i - rhs_i;
    sum_d += d;
    sum_d2 += d * d;
  }

  auto mean_se = [n](double sum, double sum2) {
    double mean = sum / static_cast<double>(n);
    double var = std::max(0.0, sum2 / static_cast<double>(n) - mean * mean);
    return std::pair<double, double>(mean, std::sqrt(var / static_cast<double>(n)));
  };

  MomentIdentityCheck c;
  c.n = n;
  auto [lm, lse] = mean_se(sum_l, sum_l2);
  auto [rm, rse] = mean_se(sum_r, sum_r2);
  auto [dm, dse] = mean_se(sum_d, sum_d2);
  (void)dm;
  c.lhs = lm;
  c.lhs_se = lse;
  c.rhs = rm;
  c.rhs_se = rse;
  c.diff_se = dse;
  return c;
}

}  // namespace chaosbe
