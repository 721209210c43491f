#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace chaosbe {

/// Exact Kolmogorov distance of the empirical CDF against the standard
/// normal: max over i of the gaps on both sides of every jump.
double kolmogorov_distance(const std::vector<double>& sample);

/// MC confidence radius from the DKW inequality: sqrt(ln(2/delta) / (2n)).
double dkw_radius(std::size_t n, double delta);

struct RatioPoint {
  double z;
  double ratio;            // (Phat(F <= z) - Phi(z)) / phi
  double standard_error;   // binomial SE of the ratio
  double predicted;        // (rho/3)(z^2 - 1) pdf(z), 0 if rho not supplied
};

/// Normalized CDF-gap curve on a z grid, with the predicted limit overlay
/// when rho is supplied.
std::vector<RatioPoint> ratio_curve(const std::vector<double>& sample, double phi,
                                    const std::vector<double>& z_grid,
                                    std::optional<double> rho = std::nullopt);

struct EmpiricalStudy {
  std::size_t n = 0;
  double d_kol = 0.0;
  double dkw = 0.0;  // at the delta passed in
  std::vector<RatioPoint> curve;
};

EmpiricalStudy empirical_study(const std::vector<double>& sample, double phi,
                               const std::vector<double>& z_grid, double delta,
                               std::optional<double> rho = std::nullopt);

/// Empirical P(F <= z).
double empirical_cdf(const std::vector<double>& sorted_sample, double z);

}  // namespace chaosbe
