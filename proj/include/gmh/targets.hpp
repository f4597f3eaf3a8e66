#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gmh/density.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// An (unnormalized) target with whatever derivative information it can
/// offer. Gradient-based kernels check capabilities before use.
struct TargetModel {
  int dim = 1;
  Box support = Box::unbounded(1);
  std::function<double(const Vector&)> log_density;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;
  std::function<Matrix(const Vector&, int)> hessian_deriv;

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool has_hessian() const { return static_cast<bool>(hessian); }
};

TargetModel target_from_density(const Density& d);

// ---- built-in densities -------------------------------------------------

Density normal_density(double mean, double sd);
Density mvnormal_density(const Vector& mean, const Matrix& cov);
Density student_t_density(double nu, double loc = 0.0, double scale = 1.0);
Density cauchy_density(double loc = 0.0, double scale = 1.0);
Density gaussian_mixture_density(const std::vector<GaussianSpec>& components,
                                 const Vector& weights);

/// Scalar built-ins by name: "normal" (mean, sd), "student_t" (nu, loc,
/// scale), "cauchy" (loc, scale).
Density builtin_density(const std::string& kind,
                        const std::vector<double>& params);

// ---- bivariate two-mode mixture ------------------------------------------

/// 0.5 N((0,0), I) + 0.5 N((10,10), 2I).
Density mixture_example_density();
std::vector<GaussianSpec> mixture_example_components();
TargetModel mixture_example_target();

// ---- six-mode target on [-10, 10]^2 ---------------------------------------

/// exp(-x1^2/2) exp(-((csc x2)^5 - x1)^2 / 2) restricted to the box; the
/// density vanishes at the csc poles (log-density -inf there).
TargetModel six_mode_target();

/// One-dimensional conditional slice of the six-mode target (unnormalized).
/// axis 0 fixes x2 and varies x1; axis 1 the reverse.
Density six_mode_conditional(int axis, double fixed);

/// Basin index of x2 among the inter-pole intervals (k*pi, (k+1)*pi) that
/// carry the six modes; -1 outside them.
int six_mode_basin(double x2);

// ---- Bayesian logistic posterior ------------------------------------------

struct LogisticPosterior {
  Matrix W;      // m x p design
  Vector z;      // binary responses
  Vector mu0;    // prior mean
  Matrix Sigma0; // prior covariance (SPD)
};

double logistic_log_post(const LogisticPosterior& lp, const Vector& beta);
Vector logistic_gradient(const LogisticPosterior& lp, const Vector& beta);
Matrix logistic_hessian(const LogisticPosterior& lp, const Vector& beta);
/// Derivative of the Hessian with respect to beta_j.
Matrix logistic_hessian_deriv(const LogisticPosterior& lp, const Vector& beta,
                              int j);

TargetModel logistic_target(const LogisticPosterior& lp);

/// Posterior mode by Newton iteration with the analytic derivatives.
Vector logistic_map_estimate(const LogisticPosterior& lp, int max_iter = 50);

/// Simulated instance: intercept column plus iid standard-normal covariates,
/// responses drawn from the model at `beta_true`.
LogisticPosterior simulate_logistic(int m, const Vector& beta_true,
                                    std::uint64_t seed,
                                    double prior_var = 1e3);

/// Delimited text with a header row; the named column is the binary
/// response, every other column a covariate. An intercept column is NOT
/// added implicitly.
LogisticPosterior load_logistic_data(const std::string& path,
                                     const std::string& response_column,
                                     double prior_var = 1e3);

}  // namespace gmh
