#pragma once

#include <string>

#include "gmh/trace.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// Mean squared Euclidean jump distance over consecutive states.
double msjd(const Matrix& states);

/// Sample autocorrelations (biased normalization) at lags 0..max_lag.
Vector acf(const Vector& series, int max_lag);

/// Batch-means effective sample size with batch size floor(sqrt(n)).
double ess(const Vector& series);

/// Multivariate ESS n * (|Lambda| / |Sigma_mc|)^(1/(2d)) with Lambda the
/// sample covariance and Sigma_mc the multivariate batch-means estimate.
double multivariate_ess(const Matrix& states);

struct DiagnosticsReport {
  Matrix acf_per_coordinate;  // (max_lag + 1) x d, lag 0 first
  Vector ess_per_coordinate;
  double mess = 0.0;  // NaN when n < 20 * dim
  double msjd_value = 0.0;
  double acceptance_rate = 0.0;
  int max_lag = 0;

  std::string to_text() const;
  std::string to_csv() const;
};

DiagnosticsReport diagnose(const Matrix& states, double acceptance_rate,
                           int max_lag = 20);
DiagnosticsReport diagnose(const ChainTrace& trace, int max_lag = 20);

}  // namespace gmh
