#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "json.hpp"

namespace {

int run_command(const std::string& config_path, long seed_override, const std::string& out_dir,
                unsigned workers) {
  nlohmann::json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
    return 2;
  }

  if (seed_override >= 0) config["seed"] = seed_override;
  std::string out = out_dir;
  if (out.empty() && config.is_object() && config.contains("output") &&
      config["output"].is_string())
    out = config["output"].get<std::string>();
  if (out.empty()) out = ".";

  chaosbe::tools::RunOutput result;
  try {
    result = chaosbe::tools::run_experiment(config, workers);
  } catch (const chaosbe::tools::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out << "\n";
    return 2;
  }
  {
    std::ofstream rep(std::filesystem::path(out) / "report.json");
    rep << result.report.dump(2) << "\n";
  }
  {
    std::ofstream curves(std::filesystem::path(out) / "curves.csv");
    curves << result.curves_csv;
  }
  if (result.flagged) {
    std::cerr << "warning: some numerics did not converge; see report.json\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berry-Esseen bounds and Edgeworth corrections for second-chaos functionals"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long seed = -1;
  unsigned workers = 1;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Path to a JSON experiment config")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory (default: config 'output' or cwd)");
  run->add_option("--workers", workers, "Worker threads for sampling")->check(CLI::Range(1, 256));

  CLI::App* list = app.add_subcommand("list-builtins", "List built-in pairs, kernels, ladders");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << chaosbe::tools::builtins_inventory().dump(2) << "\n";
    return 0;
  }
  return run_command(config_path, seed, out_dir, workers);
}
