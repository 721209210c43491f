#include "chaosbe/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaosbe/stein.hpp"

namespace chaosbe {

double kolmogorov_distance(const std::vector<double>& sample) {
  if (sample.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
  std::vector<double> x = sample;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double c = normal_cdf(x[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - c));
    d = std::max(d, std::abs(static_cast<double>(i) / n - c));
  }
  return d;
}

double dkw_radius(std::size_t n, double delta) {
  if (n == 0 || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("dkw_radius: need n >= 1 and delta in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double empirical_cdf(const std::vector<double>& sorted_sample, double z) {
  auto it = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), z);
  return static_cast<double>(it - sorted_sample.begin()) /
         static_cast<double>(sorted_sample.size());
}

std::vector<RatioPoint> ratio_curve(const std::vector<double>& sample, double phi,
                                    const std::vector<double>& z_grid,
                                    std::optional<double> rho) {
  if (!(phi > 0.0)) throw std::invalid_argument("ratio_curve: phi must be > 0");
  if (sample.empty()) throw std::invalid_argument("ratio_curve: empty sample");
  std::vector<double> x = sample;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());

  std::vector<RatioPoint> out;
  out.reserve(z_grid.size());
  for (double z : z_grid) {
    double c = normal_cdf(z);
    RatioPoint p{};
    p.z = z;
    p.ratio = (empirical_cdf(x, z) - c) / phi;
    p.standard_error = std::sqrt(c * (1.0 - c) / n) / phi;
    p.predicted = rho ? (*rho / 3.0) * (z * z - 1.0) * normal_pdf(z) : 0.0;
    out.push_back(p);
  }
  return out;
}

EmpiricalStudy empirical_study(const std::vector<double>& sample, double phi,
                               const std::vector<double>& z_grid, double delta,
                               std::optional<double> rho) {
  EmpiricalStudy s;
  s.n = sample.size();
  s.d_kol = kolmogorov_distance(sample);
  s.dkw = dkw_radius(sample.size(), delta);
  s.curve = ratio_curve(sample, phi, z_grid, rho);
  return s;
}

}  // namespace chaosbe
