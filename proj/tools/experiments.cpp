#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "chaosbe/breuer_major.hpp"
#include "chaosbe/chaos2.hpp"
#include "chaosbe/empirical.hpp"
#include "chaosbe/random.hpp"
#include "chaosbe/sheet.hpp"
#include "chaosbe/stein.hpp"
#include "chaosbe/toeplitz.hpp"

namespace chaosbe::tools {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json num(double v, const char* source) {
  return ordered_json{{"value", v}, {"source", source}};
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("'" + key + "' must be a number");
  return obj[key].get<double>();
}

long get_int(const json& obj, const std::string& key, long fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return obj[key].get<long>();
}

std::vector<double> get_array(const json& obj, const std::string& key,
                              std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_array() || obj[key].empty())
    throw ConfigError("'" + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> z_grid_from(const json& params) {
  double lo = get_num(params, "z_min", -3.0);
  double hi = get_num(params, "z_max", 3.0);
  double step = get_num(params, "z_step", 0.1);
  if (!(step > 0.0) || hi < lo) throw ConfigError("invalid z grid");
  std::vector<double> grid;
  for (double z = lo; z <= hi + 1e-12; z += step) grid.push_back(z);
  return grid;
}

std::vector<double> default_epsilon_ladder() {
  return {std::exp(-3.0), std::exp(-4.0), std::exp(-5.0), std::exp(-6.0), std::exp(-7.0)};
}

SpectralPair pair_from_config(const json& params) {
  if (!params.contains("pair")) throw ConfigError("toeplitz config needs 'pair'");
  const json& p = params["pair"];
  if (p.is_string()) {
    std::string name = p.get<std::string>();
    if (name == "cauchy-pair") return cauchy_pair();
    if (name == "gaussian-pair") return gaussian_pair();
    if (name == "signed-pair") return signed_pair();
    throw ConfigError("unknown spectral pair '" + name + "'");
  }
  if (p.is_object()) {
    check_keys(p, {"f_file", "g_file", "f_tail", "g_tail"}, "params.pair");
    if (!p.contains("f_file") || !p.contains("g_file"))
      throw ConfigError("tabulated pair needs 'f_file' and 'g_file'");
    auto f = TabulatedFunction::load_csv(p["f_file"].get<std::string>(),
                                         get_num(p, "f_tail", 2.0));
    auto g = TabulatedFunction::load_csv(p["g_file"].get<std::string>(),
                                         get_num(p, "g_tail", 2.0));
    SpectralPair pair{"tabulated", f, g, get_num(p, "f_tail", 2.0), get_num(p, "g_tail", 2.0)};
    validate_pair(pair);
    return pair;
  }
  throw ConfigError("'pair' must be a builtin name or a file object");
}

// ---------------------------------------------------------------------------

RunOutput run_stein_check(const json& params) {
  check_keys(params, {"orders", "z_min", "z_max", "z_step", "tol"}, "params");
  std::vector<double> orders_raw = get_array(params, "orders", {1, 2, 3, 4, 5, 6});
  double tol = get_num(params, "tol", 1e-10);
  std::vector<double> grid = z_grid_from(params);

  RunOutput out;
  std::string csv = "order,z,closed_form,quadrature,abs_error\n";
  double max_residual = 0.0;
  ordered_json per_order = ordered_json::array();
  for (double oq : orders_raw) {
    int q = static_cast<int>(oq);
    if (q < 1 || q > 10) throw ConfigError("stein-check orders must lie in [1, 10]");
    double worst = 0.0;
    for (double z : grid) {
      PairingCheck check = stein_hermite_pairing_check(q, z, tol);
      double res = std::abs(check.closed_form - check.quadrature);
      worst = std::max(worst, res);
      out.flagged = out.flagged || !check.converged;
      csv += std::to_string(q) + "," + fmt17(z) + "," + fmt17(check.closed_form) + "," +
             fmt17(check.quadrature) + "," + fmt17(res) + "\n";
    }
    max_residual = std::max(max_residual, worst);
    per_order.push_back({{"order", q}, {"max_residual", num(worst, "measured")}});
  }
  out.report["kind"] = "stein-check";
  out.report["closed_form"] = "eq(2.18)";
  out.report["max_residual"] = num(max_residual, "measured");
  out.report["per_order"] = per_order;
  out.curves_csv = std::move(csv);
  return out;
}

RunOutput run_chaos2_report(const json& params, std::uint64_t seed, std::size_t samples,
                            unsigned workers) {
  check_keys(params, {"eigenvalues", "z_min", "z_max", "z_step"}, "params");
  if (!params.contains("eigenvalues")) throw ConfigError("chaos2-report needs 'eigenvalues'");
  std::vector<double> eigs = get_array(params, "eigenvalues", {});
  Chaos2Spectrum spec;
  spec.eigenvalues = eigs;
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });

  NormalApproxReport rep = normal_approx_report(spec);
  double rho = rep.phi > 0.0 ? -rep.kappa3 / (2.0 * rep.phi) : 0.0;

  RunOutput out;
  out.report["kind"] = "chaos2-report";
  out.report["kappa2"] = num(rep.kappa2, "eq(3.13)");
  out.report["kappa3"] = num(rep.kappa3, "eq(3.13)");
  out.report["kappa4"] = num(rep.kappa4, "eq(3.13)");
  out.report["kappa8"] = num(rep.kappa8, "eq(3.13)");
  out.report["phi"] = num(rep.phi, "eq(3.14)");
  out.report["kolmogorov_bound"] = num(rep.kolmogorov_bound, "eq(3.14)");
  if (rep.alpha) out.report["alpha"] = num(*rep.alpha, "eq(3.17)");
  if (rep.eighth_ratio) out.report["eighth_ratio"] = num(*rep.eighth_ratio, "eq(3.16)");
  out.report["edgeworth_coefficient"] = num(rep.edgeworth_coefficient, "eq(3.3)");
  out.report["rho"] = num(rho, "eq(3.9)");

  std::string csv = "z,ratio,standard_error,predicted\n";
  if (samples > 0) {
    RandomSource src(seed, 0);
    std::vector<double> draws = sample(spec, src, samples, workers);
    std::vector<double> grid = z_grid_from(params);
    EmpiricalStudy study = empirical_study(draws, rep.phi, grid, 0.01, rho);
    out.report["samples"] = samples;
    out.report["d_kol"] = num(study.d_kol, "measured");
    out.report["dkw_radius"] = num(study.dkw, "measured");
    for (const RatioPoint& pt : study.curve)
      csv += fmt17(pt.z) + "," + fmt17(pt.ratio) + "," + fmt17(pt.standard_error) + "," +
             fmt17(pt.predicted) + "\n";
  }
  out.curves_csv = std::move(csv);
  return out;
}

RunOutput run_toeplitz(const json& params, unsigned workers) {
  check_keys(params, {"pair", "horizons", "grid", "jmax", "embedding_grid"}, "params");
  SpectralPair pair = pair_from_config(params);
  std::vector<double> horizons = get_array(params, "horizons", {50.0, 100.0});
  std::size_t grid = static_cast<std::size_t>(get_int(params, "grid", 600));
  int jmax = static_cast<int>(get_int(params, "jmax", 4));
  std::size_t egrid = static_cast<std::size_t>(get_int(params, "embedding_grid", 0));
  if (grid < 2 || grid > 4000) throw ConfigError("'grid' must lie in [2, 4000]");
  if (jmax < 2 || jmax > 8) throw ConfigError("'jmax' must lie in [2, 8]");

  ToeplitzAsymptotics asy = asymptotic_constants(pair, jmax);

  RunOutput out;
  out.flagged = !asy.converged;
  out.report["kind"] = "toeplitz";
  out.report["pair"] = pair.name;
  out.report["sigma2_inf"] = num(asy.sigma2_inf, "eq(4.2)");
  out.report["limit_constant"] = num(asy.limit_constant, "eq(4.1)");
  ordered_json asym = ordered_json::array();
  for (int j = 2; j <= jmax; ++j) asym.push_back(num(asy.per_j[j - 1], "eq(4.2)"));
  out.report["scaled_cumulant_limits"] = asym;

  std::string csv = "horizon,j,raw,standardized,scaled,asymptote\n";
  ordered_json points = ordered_json::array();
  for (double horizon : horizons) {
    ToeplitzReport rep = toeplitz_cumulants(pair, horizon, grid, jmax, workers);
    out.flagged = out.flagged || !rep.converged;
    ordered_json point;
    point["horizon"] = horizon;
    point["grid"] = grid;
    point["sigma2_T"] = num(rep.sigma2_T, "eq(4.1)");
    ordered_json raw = ordered_json::array(), std_c = ordered_json::array();
    for (int j = 2; j <= jmax; ++j) {
      raw.push_back(num(rep.raw_cumulants[j - 1], "eq(4.1)"));
      std_c.push_back(num(rep.standardized[j - 1], "eq(4.1)"));
      double scaled = rep.standardized[j - 1] * std::pow(horizon, 0.5 * j - 1.0);
      csv += fmt17(horizon) + "," + std::to_string(j) + "," + fmt17(rep.raw_cumulants[j - 1]) +
             "," + fmt17(rep.standardized[j - 1]) + "," + fmt17(scaled) + "," +
             fmt17(asy.per_j[j - 1]) + "\n";
    }
    point["raw_cumulants"] = raw;
    point["standardized_cumulants"] = std_c;
    if (egrid >= 2) {
      ToeplitzReport small = toeplitz_cumulants(pair, horizon, egrid, jmax, workers);
      Chaos2Spectrum emb = chaos2_embedding(pair, horizon, egrid, workers);
      ordered_json dual = ordered_json::array();
      for (int j = 2; j <= jmax; ++j) {
        double trace_route = small.raw_cumulants[j - 1];
        double spectral_route = cumulant(emb, j);
        double rel = std::abs(trace_route - spectral_route) /
                     std::max(std::abs(trace_route), 1e-300);
        dual.push_back({{"j", j},
                        {"trace_route", num(trace_route, "eq(4.1)")},
                        {"spectral_route", num(spectral_route, "eq(3.13)")},
                        {"rel_error", num(rel, "measured")}});
      }
      point["embedding_grid"] = egrid;
      point["dual_route"] = dual;
    }
    points.push_back(point);
  }
  out.report["points"] = points;
  out.curves_csv = std::move(csv);
  return out;
}

RunOutput run_sheet(const json& params, std::uint64_t seed, std::size_t samples,
                    unsigned workers) {
  check_keys(params, {"dimensions", "epsilons", "grid", "jmax"}, "params");
  std::vector<double> dims = get_array(params, "dimensions", {1.0, 2.0});
  std::vector<double> epsilons = get_array(params, "epsilons", default_epsilon_ladder());
  std::size_t grid = static_cast<std::size_t>(get_int(params, "grid", 400));
  int jmax = static_cast<int>(get_int(params, "jmax", 6));
  if (grid < 2 || grid > 2000) throw ConfigError("'grid' must lie in [2, 2000]");

  RunOutput out;
  out.report["kind"] = "sheet";
  std::string csv = "dimension,epsilon,j,kappa,kappa_kronecker\n";
  ordered_json points = ordered_json::array();
  std::size_t index = 0;
  RandomSource base(seed, 1);
  for (double dd : dims) {
    int d = static_cast<int>(dd);
    for (double eps : epsilons) {
      SheetModel model{d, eps, grid};
      SheetCumulants cums = sheet_cumulants(model, jmax);
      std::vector<double> kron;
      if (d == 2) kron = sheet_cumulants_kronecker_2d(model, jmax);

      ordered_json point;
      point["dimension"] = d;
      point["epsilon"] = eps;
      point["grid"] = grid;
      ordered_json lifted = ordered_json::array();
      for (int j = 2; j <= jmax; ++j) {
        lifted.push_back(num(cums.lifted[j - 1], "eq(5.4)"));
        csv += std::to_string(d) + "," + fmt17(eps) + "," + std::to_string(j) + "," +
               fmt17(cums.lifted[j - 1]) + "," + (d == 2 ? fmt17(kron[j - 1]) : "") + "\n";
      }
      point["cumulants"] = lifted;
      if (d == 2) {
        double worst = 0.0;
        for (int j = 2; j <= jmax; ++j)
          worst = std::max(worst, std::abs(cums.lifted[j - 1] - kron[j - 1]) /
                                      std::max(std::abs(kron[j - 1]), 1e-300));
        point["kronecker_max_rel_error"] = num(worst, "measured");
      }
      if (samples > 0 && d <= 2) {
        SheetRateReport rate = sheet_rate_report(model, base.substream(index), samples, workers);
        point["phi"] = num(rate.phi, "eq(3.14)");
        point["d_kol"] = num(rate.d_kol, "measured");
        point["dkw_radius"] = num(rate.dkw, "measured");
        point["reference_rate"] = num(rate.reference_rate, "eq(5.2)");
        point["ratio_to_phi"] = num(rate.ratio_to_phi, "measured");
        point["ratio_to_rate"] = num(rate.ratio_to_rate, "measured");
        point["underpowered"] = rate.underpowered;
      }
      points.push_back(point);
      ++index;
    }
  }
  out.report["points"] = points;
  out.curves_csv = std::move(csv);
  return out;
}

RunOutput run_breuer_major(const json& params, std::uint64_t seed, std::size_t samples,
                           unsigned workers) {
  check_keys(params,
             {"hurst", "q", "horizons", "mesh", "z_grid", "tol", "crosscheck_horizon"},
             "params");
  FbmModel base;
  base.hurst = get_num(params, "hurst", 0.3);
  base.q = static_cast<int>(get_int(params, "q", 2));
  base.mesh = get_num(params, "mesh", 0.25);
  std::vector<double> horizons = get_array(params, "horizons", {100.0, 200.0, 500.0});
  std::vector<double> z_grid = get_array(params, "z_grid", {-2.0, -1.0, 0.0, 1.0, 2.0});
  double tol = get_num(params, "tol", 1e-6);
  base.horizon = horizons.front();
  validate_model(base);

  BreuerMajorConstants constants = limit_constants(base, tol);

  RunOutput out;
  out.flagged = !constants.converged;
  out.report["kind"] = "breuer-major";
  out.report["hurst"] = base.hurst;
  out.report["q"] = base.q;
  out.report["mesh"] = base.mesh;
  out.report["sigma2_inf"] = num(constants.sigma2_inf, "sec(6)");
  out.report["sigma_hat2"] = num(constants.sigma_hat2, "eq(6.1)");
  ordered_json per_s = ordered_json::array();
  for (double v : constants.sigma_hat_s2) per_s.push_back(num(v, "eq(6.1)"));
  out.report["sigma_hat_s2"] = per_s;
  out.report["gamma_hat"] = num(constants.gamma_hat, "eq(6.2)");
  out.report["curve_coefficient"] = num(constants.curve_coefficient, "eq(6.4)");
  out.report["truncation_radius"] = num(constants.truncation_radius, "measured");
  out.report["truncation_rel_change"] = num(constants.error_estimate, "measured");

  ordered_json sig_t = ordered_json::array();
  for (double horizon : horizons) {
    FbmModel m = base;
    m.horizon = horizon;
    VarianceConstants vc = variance_constants(m);
    out.flagged = out.flagged || !vc.converged;
    sig_t.push_back({{"horizon", horizon}, {"sigma2_T", num(vc.sigma2_T, "sec(6)")}});
  }
  out.report["sigma2_T"] = sig_t;

  std::string csv = "horizon,z,measured,standard_error,predicted,underpowered\n";
  if (samples > 0) {
    RandomSource src(seed, 2);
    if (base.q == 2) {
      LimitVerification ver = verify_limit(base, horizons, z_grid, src, samples, workers);
      ordered_json dkol = ordered_json::array();
      for (std::size_t i = 0; i < horizons.size(); ++i)
        dkol.push_back(
            {{"horizon", horizons[i]}, {"sqrt_t_d_kol", num(ver.sqrt_t_dkol[i], "measured")}});
      out.report["sqrt_t_d_kol"] = dkol;
      for (const LimitPoint& pt : ver.points)
        csv += fmt17(pt.horizon) + "," + fmt17(pt.z) + "," + fmt17(pt.measured) + "," +
               fmt17(pt.standard_error) + "," + fmt17(pt.predicted) + "," +
               (pt.underpowered ? "1" : "0") + "\n";
    } else {
      ordered_json dkol = ordered_json::array();
      for (std::size_t i = 0; i < horizons.size(); ++i) {
        FbmModel m = base;
        m.horizon = horizons[i];
        std::vector<double> draws =
            IncrementField(m).sample_zt(src.substream(i), 0, samples, workers);
        dkol.push_back({{"horizon", horizons[i]},
                        {"sqrt_t_d_kol",
                         num(std::sqrt(m.horizon) * kolmogorov_distance(draws), "measured")}});
      }
      out.report["sqrt_t_d_kol"] = dkol;
    }
    out.report["samples"] = samples;
  }
  if (base.q == 2) {
    FbmModel cm = base;
    cm.horizon = std::min(get_num(params, "crosscheck_horizon", 200.0), horizons.back());
    Chaos2CrossCheck check = chaos2_cross_check(cm);
    out.report["crosscheck"] = {{"horizon", cm.horizon},
                                {"alpha", num(check.alpha, "eq(3.13)")},
                                {"predicted", num(check.predicted, "eq(6.4)")}};
  }
  out.curves_csv = std::move(csv);
  return out;
}

}  // namespace

RunOutput run_experiment(const json& config, unsigned workers) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(config, {"version", "kind", "seed", "samples", "output", "params"}, "config");
  if (!config.contains("version") || !config["version"].is_number_integer() ||
      config["version"].get<int>() != 1)
    throw ConfigError("config 'version' must be 1");
  if (!config.contains("kind") || !config["kind"].is_string())
    throw ConfigError("config needs a string 'kind'");
  std::string kind = config["kind"].get<std::string>();
  long seed_raw = get_int(config, "seed", 1);
  if (seed_raw < 0) throw ConfigError("'seed' must be nonnegative");
  std::uint64_t seed = static_cast<std::uint64_t>(seed_raw);
  long samples_raw = get_int(config, "samples", 0);
  if (samples_raw < 0) throw ConfigError("'samples' must be nonnegative");
  std::size_t samples = static_cast<std::size_t>(samples_raw);
  json params = config.contains("params") ? config["params"] : json::object();
  if (!params.is_object()) throw ConfigError("'params' must be an object");

  RunOutput out;
  if (kind == "stein-check")
    out = run_stein_check(params);
  else if (kind == "chaos2-report")
    out = run_chaos2_report(params, seed, samples, workers);
  else if (kind == "toeplitz")
    out = run_toeplitz(params, workers);
  else if (kind == "sheet")
    out = run_sheet(params, seed, samples, workers);
  else if (kind == "breuer-major")
    out = run_breuer_major(params, seed, samples, workers);
  else
    throw ConfigError("unknown experiment kind '" + kind + "'");

  out.report["seed"] = seed;
  out.report["flagged"] = out.flagged;
  return out;
}

ordered_json builtins_inventory() {
  ordered_json inv;
  inv["experiments"] = {"stein-check", "chaos2-report", "toeplitz", "sheet", "breuer-major"};
  inv["spectral_pairs"] = {"cauchy-pair", "gaussian-pair", "signed-pair"};
  ordered_json sheet_kernel;
  sheet_kernel["name"] = "sheet-kernel";
  sheet_kernel["epsilon_ladder"] = default_epsilon_ladder();
  sheet_kernel["grid_ladder"] = {200, 400, 800};
  inv["kernel_families"] = ordered_json::array({sheet_kernel});
  ordered_json ladders;
  ladders["breuer_horizons"] = {100.0, 200.0, 500.0};
  ladders["toeplitz_horizons"] = {50.0, 100.0};
  inv["ladders"] = ladders;
  return inv;
}

}  // namespace chaosbe::tools
