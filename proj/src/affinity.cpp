#include "gmh/affinity.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace gmh {

namespace {

constexpr double kMcFloor = 1e-12;
constexpr double kMcCeil = 1.0 - 1e-9;

double spd_log_det(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw IllConditionedError(std::string(what) + ": covariance not SPD");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

Affinity make_affinity(double value, AffinityMethod method) {
  if (std::isnan(value) || value > 1.0)
    throw Error("affinity value outside (0, 1]");
  Affinity a;
  // floor against underflow at extreme states; nearly orthogonal is fine
  a.value = std::max(value, 1e-300);
  a.angle = std::acos(std::min(a.value, 1.0));
  a.method = method;
  return a;
}

Affinity gaussian_affinity(const Vector& mu1, const Matrix& cov1,
                           const Vector& mu2, const Matrix& cov2) {
  const Eigen::Index d = mu1.size();
  if (mu2.size() != d || cov1.rows() != d || cov1.cols() != d ||
      cov2.rows() != d || cov2.cols() != d)
    throw DimensionError("gaussian_affinity: dimension mismatch");

  const Matrix avg = 0.5 * (cov1 + cov2);
  Eigen::LLT<Matrix> llt(avg);
  if (llt.info() != Eigen::Success)
    throw IllConditionedError("gaussian_affinity: average covariance not SPD");
  const double logdet_avg =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double logdet_1 = spd_log_det(cov1, "gaussian_affinity");
  const double logdet_2 = spd_log_det(cov2, "gaussian_affinity");

  const Vector diff = mu1 - mu2;
  const double quad = diff.dot(llt.solve(diff));
  const double neg_log =
      0.125 * quad + 0.5 * (logdet_avg - 0.5 * (logdet_1 + logdet_2));
  return make_affinity(std::exp(-std::max(neg_log, 0.0)),
                       AffinityMethod::ClosedForm);
}

Affinity gaussian_affinity(const GaussianSpec& a, const GaussianSpec& b) {
  return gaussian_affinity(a.mean, a.cov, b.mean, b.cov);
}

Affinity quadrature_affinity(const Density& f, const Density& g,
                             const Grid& grid) {
  if (!f.normalized || !g.normalized)
    throw Error("quadrature_affinity: densities must be normalized");
  const int n = grid.size();
  Vector fv(n), gv(n), prod(n);
  for (int i = 0; i < n; ++i) {
    const Vector x = vec1(grid.points(i));
    fv(i) = std::exp(f.log_pdf(x));
    gv(i) = std::exp(g.log_pdf(x));
    prod(i) = std::sqrt(fv(i) * gv(i));
  }
  const double mass_f = integrate_with_tails(grid, fv);
  const double mass_g = integrate_with_tails(grid, gv);
  if (mass_f < 1.0 - 1e-6 || mass_g < 1.0 - 1e-6)
    throw CoverageError("quadrature_affinity: grid misses too much mass");
  const double val = integrate_with_tails(grid, prod);
  return make_affinity(std::min(val, 1.0), AffinityMethod::Quadrature);
}

Affinity quadrature_affinity_2d(const Density& f, const Density& g,
                                const Grid& gx, const Grid& gy) {
  if (!f.normalized || !g.normalized)
    throw Error("quadrature_affinity_2d: densities must be normalized");
  double mass_f = 0.0, mass_g = 0.0, val = 0.0;
  Vector x(2);
  for (int i = 0; i < gx.size(); ++i) {
    x(0) = gx.points(i);
    for (int j = 0; j < gy.size(); ++j) {
      x(1) = gy.points(j);
      const double w = gx.weights(i) * gy.weights(j);
      const double fv = std::exp(f.log_pdf(x));
      const double gv = std::exp(g.log_pdf(x));
      mass_f += w * fv;
      mass_g += w * gv;
      val += w * std::sqrt(fv * gv);
    }
  }
  if (mass_f < 1.0 - 1e-6 || mass_g < 1.0 - 1e-6)
    throw CoverageError("quadrature_affinity_2d: grid misses too much mass");
  return make_affinity(std::min(val, 1.0), AffinityMethod::Quadrature);
}

Affinity importance_affinity(const Density& f, const Density& g, long n,
                             Rng& rng) {
  if (n < 2) throw Error("importance_affinity: need n >= 2");
  if (!f.samplable())
    throw CapabilityError("importance_affinity: f has no sampler");
  double sum = 0.0, sumsq = 0.0;
  long nonzero = 0;
  for (long i = 0; i < n; ++i) {
    const Vector x = f.draw(rng);
    const double r = std::exp(0.5 * (g.log_pdf(x) - f.log_pdf(x)));
    if (r > 0.0) ++nonzero;
    sum += r;
    sumsq += r * r;
  }
  if (nonzero == 0)
    throw DegenerateSupportError("importance_affinity: all ratios were zero");
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - static_cast<double>(n) * mean * mean) /
                        static_cast<double>(n - 1));
  Affinity a = make_affinity(std::clamp(mean, kMcFloor, kMcCeil),
                             AffinityMethod::MonteCarlo);
  a.sample_size = n;
  a.std_error = std::sqrt(var / static_cast<double>(n));
  return a;
}

}  // namespace gmh
