#include "chaosbe/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaosbe {

namespace {

void check_model(const SheetModel& model, int max_dim) {
  if (model.dimension < 1 || model.dimension > max_dim)
    throw std::invalid_argument("sheet dimension out of range");
  if (!(model.epsilon > 0.0) || model.epsilon >= 0.9)
    throw std::invalid_argument("sheet epsilon must lie in (0, 0.9)");
  if (model.grid < 2) throw std::invalid_argument("sheet grid needs m >= 2");
}

double cumulant_prefactor(int j) {
  double c = 1.0;
  for (int i = 1; i < j; ++i) c *= 2.0 * i;
  return c;  // 2^(j-1) (j-1)!
}

}  // namespace

GridTensor sheet_kernel_1d(double epsilon, std::size_t m) {
  if (!(epsilon > 0.0) || epsilon >= 0.9)
    throw std::invalid_argument("sheet epsilon must lie in (0, 0.9)");
  if (m < 2) throw std::invalid_argument("sheet grid needs m >= 2");
  double norm = 1.0 / std::sqrt(4.0 * std::log(1.0 / epsilon));
  return GridTensor::from_kernel2(m, 1.0, [epsilon, norm](double x, double y) {
    double top = std::max(std::max(x, y), epsilon);
    return norm * (1.0 / top - 1.0);
  });
}

Chaos2Spectrum sheet_spectrum_1d(double epsilon, std::size_t m) {
  return spectrum(sheet_kernel_1d(epsilon, m));
}

Chaos2Spectrum kronecker_spectrum_2d(const Chaos2Spectrum& one_d) {
  Chaos2Spectrum out;
  out.mesh = one_d.mesh;
  std::size_t m = one_d.eigenvalues.size();
  out.eigenvalues.reserve(m * m);
  for (double a : one_d.eigenvalues)
    for (double b : one_d.eigenvalues) out.eigenvalues.push_back(a * b);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  return out;
}

SheetCumulants sheet_cumulants(const SheetModel& model, int jmax) {
  check_model(model, 4);
  if (jmax < 2 || jmax > 8) throw std::invalid_argument("sheet jmax must lie in [2, 8]");
  Chaos2Spectrum s = sheet_spectrum_1d(model.epsilon, model.grid);
  SheetCumulants out;
  out.one_d.assign(static_cast<std::size_t>(jmax), 0.0);
  out.lifted.assign(static_cast<std::size_t>(jmax), 0.0);
  for (int j = 2; j <= jmax; ++j) {
    double kj = cumulant(s, j);
    double c = cumulant_prefactor(j);
    out.one_d[static_cast<std::size_t>(j - 1)] = kj;
    out.lifted[static_cast<std::size_t>(j - 1)] =
        c * std::pow(kj / c, static_cast<double>(model.dimension));
  }
  return out;
}

std::vector<double> sheet_cumulants_kronecker_2d(const SheetModel& model, int jmax) {
  check_model(model, 2);
  if (model.dimension != 2)
    throw std::invalid_argument("kronecker route is defined for d = 2 only");
  if (jmax < 2 || jmax > 8) throw std::invalid_argument("sheet jmax must lie in [2, 8]");
  Chaos2Spectrum s2 = kronecker_spectrum_2d(sheet_spectrum_1d(model.epsilon, model.grid));
  std::vector<double> out(static_cast<std::size_t>(jmax), 0.0);
  for (int j = 2; j <= jmax; ++j) out[static_cast<std::size_t>(j - 1)] = cumulant(s2, j);
  return out;
}

SheetRateReport sheet_rate_report(const SheetModel& model, const RandomSource& src,
                                  std::size_t n, unsigned workers) {
  check_model(model, 2);
  if (n == 0) throw std::invalid_argument("sheet rate report needs n >= 1");
  Chaos2Spectrum s = sheet_spectrum_1d(model.epsilon, model.grid);
  if (model.dimension == 2) s = kronecker_spectrum_2d(s);

  NormalApproxReport approx = normal_approx_report(s);
  std::vector<double> draws = sample(s, src, n, workers);

  SheetRateReport report;
  report.phi = approx.phi;
  report.kolmogorov_bound = approx.kolmogorov_bound;
  report.d_kol = kolmogorov_distance(draws);
  report.dkw = dkw_radius(n, 0.01);
  double log_inv = std::log(1.0 / model.epsilon);
  report.reference_rate = std::pow(log_inv, -0.5 * model.dimension);
  report.ratio_to_phi = report.phi > 0.0 ? report.d_kol / report.phi : 0.0;
  report.ratio_to_rate = report.d_kol * std::pow(log_inv, 0.5 * model.dimension);
  report.underpowered = report.dkw > report.phi / 3.0;
  report.n = n;
  return report;
}

}  // namespace chaosbe
