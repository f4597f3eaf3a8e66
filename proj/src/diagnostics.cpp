#include "gmh/diagnostics.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace gmh {

double msjd(const Matrix& states) {
  const long n = states.rows();
  if (n < 2) throw Error("msjd: need at least two states");
  double acc = 0.0;
  for (long i = 1; i < n; ++i)
    acc += (states.row(i) - states.row(i - 1)).squaredNorm();
  return acc / static_cast<double>(n - 1);
}

Vector acf(const Vector& series, int max_lag) {
  const long n = series.size();
  if (max_lag < 0 || n <= 10L * std::max(max_lag, 1))
    throw Error("acf: series too short for requested lag");
  const double mean = series.mean();
  const Vector c = series.array() - mean;
  const double denom = c.squaredNorm();
  if (!(denom > 0.0)) throw Error("acf: degenerate (constant) series");
  Vector out(max_lag + 1);
  out(0) = 1.0;
  for (int k = 1; k <= max_lag; ++k)
    out(k) = c.head(n - k).dot(c.tail(n - k)) / denom;
  return out;
}

namespace {

// batch-means Monte Carlo variance of the mean, times n
double batch_means_var(const Vector& series) {
  const long n = series.size();
  const long b = static_cast<long>(std::floor(std::sqrt(static_cast<double>(n))));
  const long a = n / b;
  if (a < 2) throw Error("batch means: too few batches");
  const double mean = series.head(a * b).mean();
  double acc = 0.0;
  for (long j = 0; j < a; ++j) {
    const double bm = series.segment(j * b, b).mean();
    acc += (bm - mean) * (bm - mean);
  }
  return static_cast<double>(b) * acc / static_cast<double>(a - 1);
}

}  // namespace

double ess(const Vector& series) {
  const long n = series.size();
  if (n < 100) throw Error("ess: need at least 100 samples");
  const double mean = series.mean();
  const double var_iid =
      (series.array() - mean).square().sum() / static_cast<double>(n - 1);
  if (!(var_iid > 0.0)) throw Error("ess: degenerate (constant) series");
  const double var_mc = batch_means_var(series);
  if (!(var_mc > 0.0)) throw Error("ess: degenerate batch-means variance");
  return static_cast<double>(n) * var_iid / var_mc;
}

double multivariate_ess(const Matrix& states) {
  const long n = states.rows();
  const long d = states.cols();
  if (n < 20 * d) throw Error("multivariate_ess: need n >= 20 * dim");
  const Vector mean = states.colwise().mean();
  Matrix centered = states.rowwise() - mean.transpose();
  const Matrix lambda =
      centered.transpose() * centered / static_cast<double>(n - 1);

  const long b = static_cast<long>(std::floor(std::sqrt(static_cast<double>(n))));
  const long a = n / b;
  Matrix sigma = Matrix::Zero(d, d);
  const Vector gmean = states.topRows(a * b).colwise().mean();
  for (long j = 0; j < a; ++j) {
    const Vector bm = states.middleRows(j * b, b).colwise().mean();
    const Vector diff = bm - gmean;
    sigma += diff * diff.transpose();
  }
  sigma *= static_cast<double>(b) / static_cast<double>(a - 1);

  Eigen::LLT<Matrix> llt_l(lambda), llt_s(sigma);
  if (llt_l.info() != Eigen::Success || llt_s.info() != Eigen::Success)
    throw IllConditionedError("multivariate_ess: singular covariance");
  const double logdet_l =
      2.0 * llt_l.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double logdet_s =
      2.0 * llt_s.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return static_cast<double>(n) *
         std::exp((logdet_l - logdet_s) / (2.0 * static_cast<double>(d)));
}

DiagnosticsReport diagnose(const Matrix& states, double acceptance_rate,
                           int max_lag) {
  const long n = states.rows();
  const int d = static_cast<int>(states.cols());
  DiagnosticsReport rep;
  rep.max_lag = max_lag;
  rep.acceptance_rate = acceptance_rate;
  rep.msjd_value = msjd(states);
  rep.acf_per_coordinate = Matrix(max_lag + 1, d);
  rep.ess_per_coordinate = Vector(d);
  for (int j = 0; j < d; ++j) {
    rep.acf_per_coordinate.col(j) = acf(states.col(j), max_lag);
    rep.ess_per_coordinate(j) = ess(states.col(j));
  }
  rep.mess = (n >= 20L * d) ? multivariate_ess(states)
                            : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

DiagnosticsReport diagnose(const ChainTrace& trace, int max_lag) {
  return diagnose(trace.states, trace.acceptance_rate(), max_lag);
}

std::string DiagnosticsReport::to_text() const {
  std::ostringstream os;
  os << "acceptance_rate " << acceptance_rate << "\n";
  os << "msjd " << msjd_value << "\n";
  os << "mess " << mess << "\n";
  os << "ess";
  for (Eigen::Index j = 0; j < ess_per_coordinate.size(); ++j)
    os << " " << ess_per_coordinate(j);
  os << "\n";
  for (int k = 0; k <= max_lag; ++k) {
    os << "acf_lag" << k;
    for (Eigen::Index j = 0; j < acf_per_coordinate.cols(); ++j)
      os << " " << acf_per_coordinate(k, j);
    os << "\n";
  }
  return os.str();
}

std::string DiagnosticsReport::to_csv() const {
  std::ostringstream os;
  os << "metric";
  for (Eigen::Index j = 0; j < acf_per_coordinate.cols(); ++j)
    os << ",coord" << j;
  os << "\n";
  os << "ess";
  for (Eigen::Index j = 0; j < ess_per_coordinate.size(); ++j)
    os << "," << ess_per_coordinate(j);
  os << "\n";
  for (int k = 0; k <= max_lag; ++k) {
    os << "acf_lag" << k;
    for (Eigen::Index j = 0; j < acf_per_coordinate.cols(); ++j)
      os << "," << acf_per_coordinate(k, j);
    os << "\n";
  }
  os << "msjd," << msjd_value << "\n";
  os << "mess," << mess << "\n";
  os << "acceptance_rate," << acceptance_rate << "\n";
  return os.str();
}

}  // namespace gmh
