#include "chaosbe/breuer_major.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "chaosbe/empirical.hpp"
#include "chaosbe/quadrature.hpp"
#include "chaosbe/stein.hpp"
#include "chaosbe/symmetric_matrix.hpp"

namespace chaosbe {

namespace {

unsigned long long factorial_u(int n) {
  unsigned long long v = 1;
  for (int i = 2; i <= n; ++i) v *= static_cast<unsigned long long>(i);
  return v;
}

unsigned long long binom_u(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long v = 1;
  for (int i = 1; i <= k; ++i) v = v * static_cast<unsigned long long>(n - k + i) /
                                   static_cast<unsigned long long>(i);
  return v;
}

double rho_pow(double hurst, int p, double x) {
  double r = fbm_rho(hurst, x);
  double v = 1.0;
  for (int i = 0; i < p; ++i) v *= r;
  return v;
}

/// Smallest doubling radius with |rho(R)|^q below 1e-12.
double truncation_radius(double hurst, int q) {
  double r = 2.0;
  while (std::pow(std::abs(fbm_rho(hurst, r)), q) >= 1e-12 && r < 1e9) r *= 2.0;
  return r;
}

/// Integrates over [a, b] with the integrand split at known kink abscissas.
double integrate_kinked(const Fn1& f, double a, double b, std::vector<double> kinks,
                        double tol, bool* converged = nullptr) {
  kinks.push_back(a);
  kinks.push_back(b);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  double total = 0.0;
  bool ok = true;
  double lo = a;
  std::size_t segments = 0;
  for (double k : kinks)
    if (k > a && k < b) ++segments;
  double seg_tol = tol / static_cast<double>(segments + 1);
  for (double k : kinks) {
    if (k <= a || k > b) continue;
    IntegralResult piece = integrate(f, lo, k, seg_tol);
    total += piece.value;
    ok = ok && piece.converged;
    lo = k;
  }
  if (lo < b) {
    IntegralResult piece = integrate(f, lo, b, seg_tol);
    total += piece.value;
    ok = ok && piece.converged;
  }
  if (converged) *converged = *converged && ok;
  return total;
}

/// Autocorrelation of rho^p at lag t, truncated to x in [-radius, radius].
double rho_autocorrelation(double hurst, int p, double t, double radius, double tol) {
  auto f = [hurst, p, t](double x) {
    return rho_pow(hurst, p, x) * rho_pow(hurst, p, x + t);
  };
  std::vector<double> kinks = {-1.0, 0.0, 1.0, -t - 1.0, -t, -t + 1.0};
  return integrate_kinked(f, -radius, radius, std::move(kinks), tol);
}

/// int_R^3 rho^s(x1) rho^s(x2) rho^(q-s)(x3) rho^(q-s)(x2+x3-x1), reduced to
/// int A_s(t) A_(q-s)(t) dt over lags t.
double triple_product_integral(double hurst, int q, int s, double radius, double tol,
                               bool* converged) {
  auto f = [&](double t) {
    return rho_autocorrelation(hurst, s, t, radius, tol * 1e-2) *
           rho_autocorrelation(hurst, q - s, t, radius, tol * 1e-2);
  };
  return 2.0 * integrate_kinked(f, 0.0, 2.0 * radius, {1.0, 2.0}, tol, converged);
}

/// int_R^2 rho^(q/2)(x) rho^(q/2)(y) rho^(q/2)(x-y) dx dy.
double double_product_integral(double hurst, int q, double radius, double tol,
                               bool* converged) {
  int half = q / 2;
  auto f = [&](double y) {
    return rho_pow(hurst, half, y) * rho_autocorrelation(hurst, half, y, radius, tol * 1e-2);
  };
  return 2.0 * integrate_kinked(f, 0.0, radius, {1.0, 2.0}, tol, converged);
}

}  // namespace

void validate_model(const FbmModel& model) {
  if (!(model.hurst > 0.0) || !(model.hurst <= 0.5))
    throw std::invalid_argument("hurst index must lie in (0, 1/2]");
  if (model.q < 2 || model.q % 2 != 0 || model.q > 12)
    throw std::invalid_argument("hermite order must be an even integer in [2, 12]");
  if (!(model.horizon > 0.0) || !(model.mesh > 0.0))
    throw std::invalid_argument("horizon and mesh must be positive");
  double steps = model.horizon / model.mesh;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(steps, 1.0))
    throw std::invalid_argument("horizon must be an integer multiple of the mesh");
}

double fbm_rho(double hurst, double x) {
  if (!(hurst > 0.0) || !(hurst < 1.0))
    throw std::invalid_argument("hurst index must lie in (0, 1)");
  double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(std::abs(x + 1.0), h2) + std::pow(std::abs(x - 1.0), h2) -
                2.0 * std::pow(std::abs(x), h2));
}

VarianceConstants variance_constants(const FbmModel& model) {
  validate_model(model);
  double radius = truncation_radius(model.hurst, model.q);
  double qfact = static_cast<double>(factorial_u(model.q));
  double t = model.horizon;

  VarianceConstants out;
  out.truncation_radius = radius;

  auto weighted = [&](double x) {
    return (1.0 - x / t) * rho_pow(model.hurst, model.q, x);
  };
  bool ok = true;
  out.sigma2_T =
      2.0 * qfact * integrate_kinked(weighted, 0.0, std::min(t, radius), {1.0}, 1e-11, &ok);

  auto plain = [&](double x) { return rho_pow(model.hurst, model.q, x); };
  double half = integrate_kinked(plain, 0.0, radius, {1.0}, 1e-12, &ok);
  out.sigma2_inf = 2.0 * qfact * half;

  // Power-law tail extrapolation decides whether the truncation converged.
  double beta = (2.0 - 2.0 * model.hurst) * model.q;
  double edge = std::abs(rho_pow(model.hurst, model.q, radius));
  double tail = beta > 1.0 ? edge * radius / (beta - 1.0) : edge * radius;
  out.converged = ok && 2.0 * qfact * tail < 1e-7 * std::max(std::abs(out.sigma2_inf), 1.0);
  return out;
}

double sigma2_T_direct(const FbmModel& model) {
  validate_model(model);
  double t = model.horizon;
  if (t > 50.0) throw std::invalid_argument("direct 2-d variance route is for small horizons");
  double qfact = static_cast<double>(factorial_u(model.q));
  auto inner = [&](double u) {
    auto f = [&](double v) { return rho_pow(model.hurst, model.q, u - v); };
    return integrate_kinked(f, 0.0, t, {u - 1.0, u, u + 1.0}, 1e-12);
  };
  double outer = integrate_kinked(inner, 0.0, t, {1.0, t - 1.0}, 1e-10);
  return qfact / t * outer;
}

BreuerMajorConstants limit_constants(const FbmModel& model, double tol) {
  validate_model(model);
  VarianceConstants var = variance_constants(model);

  BreuerMajorConstants out;
  out.sigma2_T = var.sigma2_T;
  out.sigma2_inf = var.sigma2_inf;
  out.truncation_radius = var.truncation_radius;
  out.converged = var.converged;

  int q = model.q;
  double sigma2 = var.sigma2_inf;
  if (!(sigma2 > 0.0)) throw std::runtime_error("vanishing limit variance");

  auto evaluate = [&](double radius, BreuerMajorConstants* c) {
    bool ok = true;
    c->sigma_hat_s2.assign(static_cast<std::size_t>(q - 1), 0.0);
    double sum = 0.0;
    for (int s = 1; s <= q - 1; ++s) {
      double integral = triple_product_integral(model.hurst, q, s, radius, tol * 1e-2, &ok);
      double piece = static_cast<double>(factorial_u(2 * q - 2 * s)) * integral;
      c->sigma_hat_s2[static_cast<std::size_t>(s - 1)] = piece;
      double fs = static_cast<double>(factorial_u(s - 1));
      double bs = static_cast<double>(binom_u(q - 1, s - 1));
      sum += fs * fs * bs * bs * bs * bs * piece;
    }
    c->sigma_hat2 = static_cast<double>(q) * static_cast<double>(q) / (sigma2 * sigma2) * sum;

    double j = double_product_integral(model.hurst, q, radius, tol * 1e-2, &ok);
    double bq = static_cast<double>(binom_u(q, q / 2));
    double pref = static_cast<double>(factorial_u(q)) * static_cast<double>(factorial_u(q / 2)) *
                  bq * bq / 2.0;
    c->gamma_hat = -pref * j / std::pow(sigma2, 1.5);
    c->curve_coefficient = c->gamma_hat / 3.0;
    c->converged = c->converged && ok;
  };

  evaluate(var.truncation_radius, &out);
  BreuerMajorConstants wide = out;
  evaluate(2.0 * var.truncation_radius, &wide);

  double rel = 0.0;
  auto track = [&rel](double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    rel = std::max(rel, std::abs(a - b) / scale);
  };
  track(out.sigma_hat2, wide.sigma_hat2);
  track(out.gamma_hat, wide.gamma_hat);
  out.error_estimate = rel;
  out.converged = out.converged && wide.converged && rel <= std::max(tol, 1e-4);
  return out;
}

IncrementField::IncrementField(const FbmModel& model) : model_(model) {
  validate_model(model);
  double steps = model.horizon / model.mesh;
  n_ = static_cast<std::size_t>(std::llround(steps));
  if (steps + 1.0 / model.mesh > 8000.0)
    throw std::invalid_argument("increment grid exceeds the dense factorization budget");

  Matrix cov(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      cov(i, j) = fbm_rho(model.hurst, (static_cast<double>(i) - static_cast<double>(j)) *
                                           model.mesh);
  Matrix chol = cov;
  if (cholesky_lower(chol)) {
    factor_ = std::move(chol);
  } else {
    SymmetricMatrix sym(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j) sym.set(i, j, cov(i, j));
    EigenDecomposition ed = eigen_symmetric(sym, "increment covariance");
    double emax = 0.0;
    for (double lam : ed.eigenvalues) emax = std::max(emax, std::abs(lam));
    for (double& lam : ed.eigenvalues) {
      if (lam < -1e-8 * emax)
        throw std::runtime_error(
            "increment covariance indefinite; mesh too fine for double precision");
      lam = std::max(lam, 0.0);
    }
    factor_ = Matrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        factor_(i, j) = ed.eigenvectors[i * n_ + j] * std::sqrt(ed.eigenvalues[j]);
  }
  sigma2_T_ = variance_constants(model).sigma2_T;
}

std::vector<double> IncrementField::sample_path(const RandomSource& src,
                                                std::size_t replica) const {
  std::vector<double> xi(n_), out(n_);
  std::uint64_t base = static_cast<std::uint64_t>(replica) * n_;
  for (std::size_t i = 0; i < n_; ++i) xi[i] = src.normal_at(base + i);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += factor_(i, j) * xi[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> IncrementField::sample_zt(const RandomSource& src, std::size_t first,
                                              std::size_t count, unsigned workers) const {
  std::vector<double> out(count);
  double norm = model_.mesh / (std::sqrt(sigma2_T_) * std::sqrt(model_.horizon));
  int q = model_.q;

  auto run = [&](std::size_t lo, std::size_t hi) {
    constexpr std::size_t kBlock = 64;
    for (std::size_t start = lo; start < hi; start += kBlock) {
      std::size_t cnt = std::min(kBlock, hi - start);
      Matrix xi(n_, cnt);
      for (std::size_t c = 0; c < cnt; ++c) {
        std::uint64_t base = static_cast<std::uint64_t>(first + start + c) * n_;
        for (std::size_t i = 0; i < n_; ++i) xi(i, c) = src.normal_at(base + i);
      }
      Matrix x = multiply(factor_, xi, 1);
      for (std::size_t c = 0; c < cnt; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i) acc += hermite(q, x(i, c));
        out[start + c] = acc * norm;
      }
    }
  };

  unsigned w = std::max(1u, workers);
  if (w == 1 || count < 128) {
    run(0, count);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (count + w - 1) / w;
    chunk = ((chunk + 63) / 64) * 64;  // block-aligned so splits match kBlock
    for (std::size_t lo = 0; lo < count; lo += chunk)
      pool.emplace_back(run, lo, std::min(lo + chunk, count));
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<double> simulate_increment_field(const FbmModel& model, const RandomSource& src) {
  return IncrementField(model).sample_path(src, 0);
}

std::vector<double> sample_ZT(const FbmModel& model, const RandomSource& src, std::size_t n,
                              unsigned workers) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  return IncrementField(model).sample_zt(src, 0, n, workers);
}

LimitVerification verify_limit(const FbmModel& base, const std::vector<double>& horizons,
                               const std::vector<double>& z_grid, const RandomSource& src,
                               std::size_t n, unsigned workers) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  BreuerMajorConstants constants = limit_constants(base);

  LimitVerification out;
  out.horizons = horizons;
  out.gamma_hat = constants.gamma_hat;
  for (std::size_t ti = 0; ti < horizons.size(); ++ti) {
    FbmModel model = base;
    model.horizon = horizons[ti];
    IncrementField field(model);
    std::vector<double> draws = field.sample_zt(src.substream(ti), 0, n, workers);
    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    double sqrt_t = std::sqrt(model.horizon);
    out.sqrt_t_dkol.push_back(sqrt_t * kolmogorov_distance(draws));
    for (double z : z_grid) {
      LimitPoint pt;
      pt.horizon = model.horizon;
      pt.z = z;
      double p = empirical_cdf(sorted, z);
      pt.measured = sqrt_t * (p - normal_cdf(z));
      pt.standard_error = sqrt_t * std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                                             static_cast<double>(n));
      pt.predicted = constants.curve_coefficient * (z * z - 1.0) * normal_pdf(z);
      pt.underpowered = pt.standard_error > 0.5 * std::abs(pt.predicted);
      out.points.push_back(pt);
    }
  }
  return out;
}

Chaos2Spectrum zt_spectrum(const FbmModel& model) {
  validate_model(model);
  if (model.q != 2)
    throw std::invalid_argument("the quadratic-form spectrum route needs q = 2");
  IncrementField field(model);
  std::size_t n = field.size();
  const Matrix& l = field.factor();
  Matrix lt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lt(i, j) = l(j, i);
  Matrix m = multiply(lt, l, 1);
  double scale = model.mesh / (std::sqrt(field.sigma2_T()) * std::sqrt(model.horizon));
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.5 * (m(i, j) + m(j, i)) * scale;
      dense[i * n + j] = v;
      dense[j * n + i] = v;
    }
  Chaos2Spectrum spec;
  spec.mesh = model.mesh;
  spec.eigenvalues = eigenvalues_symmetric_dense(std::move(dense), n, "quadratic form of Z_T");
  return spec;
}

Chaos2CrossCheck chaos2_cross_check(const FbmModel& model) {
  // Standardizing removes the lattice scale bias of the discrete quadratic
  // form; the asymptotic prediction assumes unit variance.
  Chaos2Spectrum spec = standardize(zt_spectrum(model));
  NormalApproxReport report = normal_approx_report(spec);
  BreuerMajorConstants constants = limit_constants(model);

  Chaos2CrossCheck check;
  check.kappa3 = report.kappa3;
  check.phi = report.phi;
  check.alpha = report.phi > 0.0 ? report.kappa3 / report.phi : 0.0;
  check.predicted = -2.0 * constants.gamma_hat / std::sqrt(constants.sigma_hat2);
  return check;
}

}  // namespace chaosbe
