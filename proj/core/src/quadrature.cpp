#include "chaosbe/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace chaosbe {

namespace {

GaussRule make_gauss(std::size_t n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev guess, then Newton on P_n.
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

std::mutex g_rule_mutex;
std::map<std::size_t, GaussRule> g_rules;

double eval_rule(const GaussRule& g, const Fn1& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    s += g.weights[i] * f(mid + half * g.nodes[i]);
  return s * half;
}

struct Panel {
  double a, b, value, error;
};

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, make_gauss(n)).first;
  return it->second;
}

GaussRule composite_rule(const std::vector<double>& breakpoints, std::size_t pts) {
  if (breakpoints.size() < 2) throw std::invalid_argument("composite_rule: need >= 2 breakpoints");
  const GaussRule& g = gauss_legendre(pts);
  GaussRule out;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    double a = breakpoints[p], b = breakpoints[p + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < pts; ++i) {
      out.nodes.push_back(mid + half * g.nodes[i]);
      out.weights.push_back(half * g.weights[i]);
    }
  }
  return out;
}

IntegralResult integrate(const Fn1& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
  IntegralResult res;
  if (a == b) return res;

  const GaussRule& lo = gauss_legendre(15);
  const GaussRule& hi = gauss_legendre(31);
  const std::size_t max_panels = 4000;

  auto make_panel = [&](double pa, double pb) {
    Panel p{pa, pb, 0.0, 0.0};
    double v1 = eval_rule(lo, f, pa, pb);
    double v2 = eval_rule(hi, f, pa, pb);
    res.evals += lo.nodes.size() + hi.nodes.size();
    p.value = v2;
    p.error = std::abs(v2 - v1);
    return p;
  };

  std::vector<Panel> panels{make_panel(a, b)};
  while (true) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total_err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (total_err <= tol) break;
    if (panels.size() >= max_panels) {
      res.converged = false;
      break;
    }
    Panel w = panels[worst];
    double mid = 0.5 * (w.a + w.b);
    if (mid <= w.a || mid >= w.b) {  // interval at machine resolution
      res.converged = false;
      break;
    }
    panels[worst] = make_panel(w.a, mid);
    panels.push_back(make_panel(mid, w.b));
  }

  double v = 0.0, e = 0.0;
  for (const Panel& p : panels) {
    v += p.value;
    e += p.error;
  }
  res.value = v;
  res.error = e;
  return res;
}

IntegralResult integrate(const Fn2& f, double ax, double bx, double ay, double by, double tol) {
  IntegralResult res;
  bool inner_ok = true;
  std::size_t inner_evals = 0;
  double inner_tol = tol / (2.0 * std::max(std::abs(bx - ax), 1.0));
  Fn1 outer = [&](double x) {
    auto r = integrate([&](double y) { return f(x, y); }, ay, by, inner_tol);
    inner_ok = inner_ok && r.converged;
    inner_evals += r.evals;
    return r.value;
  };
  auto r = integrate(outer, ax, bx, tol * 0.5);
  res.value = r.value;
  res.error = r.error + inner_tol * std::abs(bx - ax);
  res.converged = r.converged && inner_ok;
  res.evals = r.evals + inner_evals;
  return res;
}

IntegralResult integrate(const Fn3& f, double ax, double bx, double ay, double by,
                         double az, double bz, double tol) {
  IntegralResult res;
  bool inner_ok = true;
  std::size_t inner_evals = 0;
  double inner_tol = tol / (2.0 * std::max(std::abs(bx - ax), 1.0));
  Fn1 outer = [&](double x) {
    auto r = integrate([&](double y, double z) { return f(x, y, z); }, ay, by, az, bz, inner_tol);
    inner_ok = inner_ok && r.converged;
    inner_evals += r.evals;
    return r.value;
  };
  auto r = integrate(outer, ax, bx, tol * 0.5);
  res.value = r.value;
  res.error = r.error + inner_tol * std::abs(bx - ax);
  res.converged = r.converged && inner_ok;
  res.evals = r.evals + inner_evals;
  return res;
}

namespace {
double halton(std::size_t index, std::size_t base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}
}  // namespace

IntegralResult integrate_qmc3(const Fn3& f, double ax, double bx, double ay, double by,
                              double az, double bz, double tol, std::size_t max_points) {
  IntegralResult res;
  const double vol = (bx - ax) * (by - ay) * (bz - az);
  std::size_t n = 4096;
  double prev = 0.0;
  bool have_prev = false;
  double sum = 0.0;
  std::size_t used = 0;
  while (true) {
    for (std::size_t i = used; i < n; ++i) {
      double x = ax + (bx - ax) * halton(i + 1, 2);
      double y = ay + (by - ay) * halton(i + 1, 3);
      double z = az + (bz - az) * halton(i + 1, 5);
      sum += f(x, y, z);
    }
    used = n;
    double est = vol * sum / static_cast<double>(n);
    if (have_prev) {
      res.error = std::abs(est - prev);
      if (res.error <= tol) {
        res.value = est;
        res.evals = used;
        return res;
      }
    }
    prev = est;
    have_prev = true;
    if (n >= max_points) {
      res.value = est;
      res.evals = used;
      res.converged = false;
      return res;
    }
    n *= 2;
  }
}

}  // namespace chaosbe
