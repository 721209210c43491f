#include "chaosbe/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "chaosbe/linalg.hpp"
#include "chaosbe/symmetric_matrix.hpp"

namespace chaosbe {

namespace {

constexpr double kPi = std::numbers::pi;

double cauchy_density(double x) { return 1.0 / (kPi * (1.0 + x * x)); }

double gaussian_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// Shift c making int (x^2 - c)^3 exp(-6x^2) exp(-3x^2) ... vanish is found
// once by bisection on the cubic product integral of the pair.
double signed_shift() {
  static const double shift = [] {
    auto cubic = [](double c) {
      auto h = [c](double x) {
        double e = std::exp(-x * x);
        return std::pow(e, 3.0) * std::pow((x * x - c) * e, 3.0);
      };
      return integrate([&](double x) { return h(x); }, 0.0, 12.0, 1e-13).value;
    };
    double lo = 0.05, hi = 0.6;
    double flo = cubic(lo);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = cubic(mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }();
  return shift;
}

// Euler transformation of an alternating-tail series given its raw terms.
double euler_sum(const std::vector<double>& terms) {
  if (terms.empty()) return 0.0;
  std::vector<double> s(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    acc += terms[i];
    s[i] = acc;
  }
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s[0];
}

}  // namespace

void validate_pair(const SpectralPair& pair) {
  for (int i = 0; i <= 64; ++i) {
    double x = -8.0 + 0.25 * i;
    if (std::abs(pair.f(x) - pair.f(-x)) > 1e-12 ||
        std::abs(pair.g(x) - pair.g(-x)) > 1e-12)
      throw std::invalid_argument("spectral pair '" + pair.name + "' is not even");
    if (pair.f(x) < 0.0)
      throw std::invalid_argument("spectral density '" + pair.name + "' is negative at lambda=" +
                                  std::to_string(x));
  }
}

SpectralPair cauchy_pair() {
  return {"cauchy-pair", cauchy_density, cauchy_density, 2.0, 2.0};
}

SpectralPair gaussian_pair() {
  return {"gaussian-pair", gaussian_density, gaussian_density, 10.0, 10.0};
}

SpectralPair signed_pair() {
  double c = signed_shift();
  auto f = [](double x) { return std::exp(-x * x); };
  auto g = [c](double x) { return (x * x - c) * std::exp(-x * x); };
  return {"signed-pair", f, g, 10.0, 10.0};
}

double TabulatedFunction::operator()(double x) const {
  double a = std::abs(x);
  if (lambda.empty()) return 0.0;
  if (a >= lambda.back()) {
    double base = value.back();
    if (base == 0.0) return 0.0;
    return base * std::pow(a / lambda.back(), -tail_exponent);
  }
  if (a <= lambda.front()) return value.front();
  auto it = std::upper_bound(lambda.begin(), lambda.end(), a);
  std::size_t hi = static_cast<std::size_t>(it - lambda.begin());
  std::size_t lo = hi - 1;
  double w = (a - lambda[lo]) / (lambda[hi] - lambda[lo]);
  return value[lo] + w * (value[hi] - value[lo]);
}

TabulatedFunction TabulatedFunction::load_csv(const std::string& path, double tail_exponent) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tabulated function file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty tabulated function file: " + path);
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s;
  };
  if (strip(line) != "lambda,value")
    throw std::runtime_error("tabulated function file must start with 'lambda,value': " + path);
  TabulatedFunction t;
  t.tail_exponent = tail_exponent;
  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b))
      throw std::runtime_error("malformed row in " + path + ": " + line);
    double lam = std::stod(a), val = std::stod(b);
    if (lam < 0.0) throw std::runtime_error("negative lambda in " + path);
    if (!t.lambda.empty() && lam <= t.lambda.back())
      throw std::runtime_error("lambda column must be strictly increasing in " + path);
    t.lambda.push_back(lam);
    t.value.push_back(val);
  }
  if (t.lambda.size() < 2) throw std::runtime_error("need at least two rows in " + path);
  return t;
}

IntegralResult fourier_transform(const std::function<double(double)>& psi, double t,
                                 double tol) {
  double tp = std::abs(t);
  IntegralResult out;
  if (tp < 1e-14) {
    // Tail doubling for the zero frequency, with geometric extrapolation of
    // the remaining shells once their ratio has settled.
    double r = 8.0;
    IntegralResult head = integrate(psi, 0.0, r, tol * 0.25);
    double total = head.value, err = head.error;
    std::size_t evals = head.evals;
    std::vector<double> shells;
    bool calm = false;
    while (r < 1e7 && shells.size() < 14) {
      IntegralResult piece = integrate(psi, r, 2.0 * r, tol * 0.1);
      total += piece.value;
      err += piece.error;
      evals += piece.evals;
      shells.push_back(piece.value);
      r *= 2.0;
      if (std::abs(piece.value) < tol * 0.1) {
        calm = true;
        break;
      }
    }
    bool ok = calm;
    if (!calm && shells.size() >= 3) {
      double last = shells[shells.size() - 1];
      double r1 = last / shells[shells.size() - 2];
      double r0 = shells[shells.size() - 2] / shells[shells.size() - 3];
      if (r1 > 0.0 && r1 < 0.95) {
        total += last * r1 / (1.0 - r1);
        double unc = std::abs(r1 - r0) * std::abs(last) / ((1.0 - r1) * (1.0 - r1));
        err += unc;
        ok = unc < tol * 0.5;
      }
    }
    out.value = 2.0 * total;
    out.error = 2.0 * err;
    out.evals = evals;
    out.converged = ok;
    return out;
  }

  // Integrate half-period chunks between cosine zeros at (k - 1/2) pi / |t|,
  // sum the head directly and Euler-accelerate the alternating tail.
  auto node = [tp](int k) { return k <= 0 ? 0.0 : (k - 0.5) * kPi / tp; };
  auto chunk = [&](int k) {
    return integrate([&](double x) { return std::cos(tp * x) * psi(x); }, node(k), node(k + 1),
                     tol * 1e-3);
  };
  constexpr int kHead = 8;
  constexpr int kTail = 24;
  double head = 0.0, err = 0.0;
  std::size_t evals = 0;
  bool inner_ok = true;
  for (int k = 0; k < kHead; ++k) {
    IntegralResult piece = chunk(k);
    head += piece.value;
    err += piece.error;
    evals += piece.evals;
    inner_ok = inner_ok && piece.converged;
  }
  std::vector<double> tail(kTail);
  double raw_tail = 0.0;
  for (int k = 0; k < kTail; ++k) {
    IntegralResult piece = chunk(kHead + k);
    tail[k] = piece.value;
    raw_tail += piece.value;
    err += piece.error;
    evals += piece.evals;
    inner_ok = inner_ok && piece.converged;
  }
  double accel = euler_sum(tail);
  std::vector<double> shorter(tail.begin(), tail.end() - 1);
  double tail_err = std::abs(accel - euler_sum(shorter)) + 1e-16 * std::abs(accel);
  out.value = 2.0 * (head + accel);
  out.error = 2.0 * (err + tail_err);
  out.evals = evals;
  out.converged = inner_ok && (2.0 * tail_err < std::max(tol, 1e-15));
  return out;
}

namespace {

struct LagTable {
  std::vector<double> f_hat;
  std::vector<double> g_hat;
  bool converged = true;
};

LagTable lag_table(const SpectralPair& pair, double h, std::size_t m, double tol) {
  LagTable table;
  table.f_hat.resize(m);
  table.g_hat.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    IntegralResult fr = fourier_transform(pair.f, static_cast<double>(k) * h, tol);
    IntegralResult gr = fourier_transform(pair.g, static_cast<double>(k) * h, tol);
    table.f_hat[k] = fr.value;
    table.g_hat[k] = gr.value;
    table.converged = table.converged && fr.converged && gr.converged;
  }
  return table;
}

Matrix toeplitz_from_lags(const std::vector<double>& hat, std::size_t m, double scale) {
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      a(i, k) = hat[i >= k ? i - k : k - i] * scale;
  return a;
}

}  // namespace

ToeplitzReport toeplitz_cumulants(const SpectralPair& pair, double horizon, std::size_t m,
                                  int jmax, unsigned workers) {
  if (!(horizon > 0.0)) throw std::invalid_argument("toeplitz horizon must be positive");
  if (m < 2) throw std::invalid_argument("toeplitz grid needs m >= 2");
  if (jmax < 2 || jmax > 8) throw std::invalid_argument("jmax must lie in [2, 8]");
  double h = horizon / static_cast<double>(m);
  LagTable table = lag_table(pair, h, m, 1e-9);

  Matrix bf = toeplitz_from_lags(table.f_hat, m, h);
  Matrix bg = toeplitz_from_lags(table.g_hat, m, h);
  Matrix p = multiply(bf, bg, workers);

  ToeplitzReport report;
  report.horizon = horizon;
  report.grid_size = m;
  report.converged = table.converged;
  report.raw_cumulants.assign(static_cast<std::size_t>(jmax), 0.0);
  Matrix power = p;
  double coeff = 1.0;  // 2^(j-1) (j-1)!
  for (int j = 2; j <= jmax; ++j) {
    power = multiply(power, p, workers);
    coeff *= 2.0 * (j - 1);
    double tr = 0.0;
    for (std::size_t i = 0; i < m; ++i) tr += power(i, i);
    report.raw_cumulants[static_cast<std::size_t>(j - 1)] =
        coeff * tr / std::pow(horizon, 0.5 * j);
  }
  report.sigma2_T = report.raw_cumulants[1];
  report.standardized.assign(static_cast<std::size_t>(jmax), 0.0);
  if (report.sigma2_T > 0.0) {
    double sigma = std::sqrt(report.sigma2_T);
    for (int j = 2; j <= jmax; ++j)
      report.standardized[static_cast<std::size_t>(j - 1)] =
          report.raw_cumulants[static_cast<std::size_t>(j - 1)] / std::pow(sigma, j);
  }
  return report;
}

ToeplitzAsymptotics asymptotic_constants(const SpectralPair& pair, int jmax, double tol) {
  if (jmax < 2 || jmax > 12) throw std::invalid_argument("jmax must lie in [2, 12]");
  ToeplitzAsymptotics out;
  out.per_j.assign(static_cast<std::size_t>(jmax), 0.0);
  out.per_j_converged.assign(static_cast<std::size_t>(jmax), true);

  auto product_integral = [&](int j, bool* ok) {
    auto fn = [&, j](double x) {
      return std::pow(pair.f(x), j) * std::pow(pair.g(x), j);
    };
    double r = 8.0;
    IntegralResult head = integrate(fn, 0.0, r, tol);
    double total = head.value;
    int calm = 0;
    while (r < 1e8) {
      IntegralResult piece = integrate(fn, r, 2.0 * r, tol);
      total += piece.value;
      r *= 2.0;
      if (std::abs(piece.value) < tol)
        ++calm;
      else
        calm = 0;
      if (calm >= 2) break;
    }
    *ok = (calm >= 2);
    return 2.0 * total;
  };

  std::vector<double> integrals(static_cast<std::size_t>(jmax) + 1, 0.0);
  for (int j = 2; j <= jmax; ++j) {
    bool ok = true;
    integrals[static_cast<std::size_t>(j)] = product_integral(j, &ok);
    out.per_j_converged[static_cast<std::size_t>(j - 1)] = ok;
    out.converged = out.converged && ok;
  }
  double i2 = integrals[2];
  out.sigma2_inf = 16.0 * kPi * kPi * kPi * i2;
  for (int j = 2; j <= jmax; ++j) {
    double coeff = 1.0;
    for (int i = 1; i < j; ++i) coeff *= 2.0 * i;
    double num = coeff * std::pow(2.0 * kPi, 2 * j - 1) * integrals[static_cast<std::size_t>(j)];
    out.per_j[static_cast<std::size_t>(j - 1)] = num / std::pow(out.sigma2_inf, 0.5 * j);
  }
  out.limit_constant = std::sqrt(2.0 / 3.0) * integrals[3] / std::pow(i2, 1.5);
  return out;
}

Chaos2Spectrum chaos2_embedding(const SpectralPair& pair, double horizon, std::size_t m,
                                unsigned workers) {
  if (m < 2) throw std::invalid_argument("toeplitz grid needs m >= 2");
  double h = horizon / static_cast<double>(m);
  LagTable table = lag_table(pair, h, m, 1e-9);

  // Covariance square root through its eigendecomposition, then the
  // quadratic form pulled back to iid coordinates.
  SymmetricMatrix cov(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= i; ++k) cov.set(i, k, table.f_hat[i - k]);
  EigenDecomposition ed = eigen_symmetric(cov, "toeplitz covariance");
  double emax = 0.0;
  for (double lam : ed.eigenvalues) emax = std::max(emax, std::abs(lam));
  for (double& lam : ed.eigenvalues) {
    if (lam < -1e-8 * emax)
      throw std::runtime_error("toeplitz covariance is indefinite: eigenvalue " +
                               std::to_string(lam));
    lam = std::max(lam, 0.0);
  }
  Matrix s(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      s(i, j) = ed.eigenvectors[i * m + j] * std::sqrt(ed.eigenvalues[j]);

  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      g(i, k) = table.g_hat[i >= k ? i - k : k - i];
  Matrix gs = multiply(g, s, workers);
  Matrix st(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) st(i, j) = s(j, i);
  Matrix b = multiply(st, gs, workers);

  double scale = h * h / std::sqrt(horizon);
  std::vector<double> sym(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      double v = 0.5 * (b(i, k) + b(k, i)) * scale;
      sym[i * m + k] = v;
      sym[k * m + i] = v;
    }
  Chaos2Spectrum spec;
  spec.mesh = h;
  spec.eigenvalues = eigenvalues_symmetric_dense(sym, m, "toeplitz quadratic form");
  return spec;
}

}  // namespace chaosbe
