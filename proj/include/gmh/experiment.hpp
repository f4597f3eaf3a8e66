#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmh/config.hpp"
#include "gmh/density.hpp"
#include "gmh/kernels.hpp"
#include "gmh/targets.hpp"
#include "gmh/varsel.hpp"

namespace gmh {

/// A target plus whatever extra structure the kernel builders can exploit.
struct TargetBundle {
  std::string kind;
  TargetModel target;
  std::optional<Density> density;  // normalized form, when known
  std::optional<LogisticPosterior> logistic;
  std::vector<GaussianSpec> components;
  Vector start_default;
};

TargetBundle build_target(const Config& cfg);

struct KernelBundle {
  std::string kind;
  StepFn step;
};

KernelBundle build_kernel(const Config& cfg, const TargetBundle& target);

/// `run` subcommand: execute one configured experiment, write the trace CSV,
/// diagnostics report and machine-readable summary. Returns 0, or 2 when the
/// chain aborted (partial outputs are still written).
int run_experiment(const Config& cfg, std::ostream& log);

/// `verify` subcommand: ordering checks on the shipped fixtures. Prints one
/// line per check; returns 0 or 3.
int run_verify(std::ostream& log, bool corrupt, int trials);

/// `varsel` subcommand driver.
int run_varsel(const Config& cfg, std::ostream& log);

/// `diagnose` subcommand: trace CSV in, report out (stdout when no prefix).
int run_diagnose(const std::string& trace_path, const std::string& out_prefix,
                 int max_lag, std::ostream& log);

}  // namespace gmh
