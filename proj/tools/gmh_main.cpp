#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "gmh/config.hpp"
#include "gmh/experiment.hpp"

// Exit codes: 0 success, 1 validation error, 2 runtime error,
// 3 verification failure.
int main(int argc, char** argv) {
  CLI::App app{"geometric informed Metropolis-Hastings experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "run a configured sampling experiment");
  run->add_option("config", config_path, "experiment config file")->required();
  run->add_option("--set", overrides, "override config keys (section.key=value)");

  auto* verify = app.add_subcommand("verify", "finite-state ordering checks");
  bool corrupt = false;
  int trials = 100;
  verify->add_flag("--corrupt", corrupt,
                   "doctor one fixture matrix (the suite must then fail)");
  verify->add_option("--trials", trials, "random test functions per fixture");

  auto* varsel = app.add_subcommand("varsel", "variable-selection sampler");
  std::string vs_config;
  std::vector<std::string> vs_overrides;
  varsel->add_option("config", vs_config, "varsel config file")->required();
  varsel->add_option("--set", vs_overrides, "override config keys");

  auto* diagnose = app.add_subcommand("diagnose", "trace CSV to report");
  std::string trace_path, out_prefix;
  int max_lag = 20;
  diagnose->add_option("trace", trace_path, "chain trace CSV")->required();
  diagnose->add_option("--out", out_prefix, "output prefix (stdout if absent)");
  diagnose->add_option("--max-lag", max_lag, "autocorrelation horizon");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gmh::Config cfg = gmh::Config::parse_file(config_path);
      for (const auto& o : overrides) cfg.set_override(o);
      return gmh::run_experiment(cfg, std::cout);
    }
    if (verify->parsed()) {
      return gmh::run_verify(std::cout, corrupt, trials);
    }
    if (varsel->parsed()) {
      gmh::Config cfg = gmh::Config::parse_file(vs_config);
      for (const auto& o : vs_overrides) cfg.set_override(o);
      return gmh::run_varsel(cfg, std::cout);
    }
    if (diagnose->parsed()) {
      return gmh::run_diagnose(trace_path, out_prefix, max_lag, std::cout);
    }
  } catch (const gmh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
