#include "gmh/targets.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "gmh/rng.hpp"

namespace gmh {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

double log1pexp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double logistic_fn(double t) { return 1.0 / (1.0 + std::exp(-t)); }

struct MvnCore {
  Vector mean;
  Matrix chol_lower;
  double log_norm;  // -d/2 log(2pi) - 1/2 logdet

  explicit MvnCore(const Vector& mu, const Matrix& cov) : mean(mu) {
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success)
      throw IllConditionedError("mvnormal: covariance not SPD");
    chol_lower = llt.matrixL();
    const double logdet =
        2.0 * chol_lower.diagonal().array().log().sum();
    log_norm = -0.5 * (static_cast<double>(mu.size()) * kLogTwoPi + logdet);
  }

  double log_pdf(const Vector& x) const {
    Vector u = chol_lower.triangularView<Eigen::Lower>().solve(x - mean);
    return log_norm - 0.5 * u.squaredNorm();
  }

  Vector draw(Rng& rng) const {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = nd(rng);
    return mean + chol_lower * z;
  }
};

}  // namespace

TargetModel target_from_density(const Density& d) {
  TargetModel t;
  t.dim = d.dim;
  t.support = d.support;
  t.log_density = d.log_pdf;
  return t;
}

Density normal_density(double mean, double sd) {
  if (!(sd > 0.0)) throw Error("normal_density: sd must be positive");
  Density d;
  d.dim = 1;
  d.log_pdf = [mean, sd](const Vector& x) {
    const double u = (x(0) - mean) / sd;
    return -0.5 * (kLogTwoPi + u * u) - std::log(sd);
  };
  d.draw = [mean, sd](Rng& rng) {
    std::normal_distribution<double> nd(mean, sd);
    return vec1(nd(rng));
  };
  d.gaussian = GaussianSpec{vec1(mean), Matrix::Constant(1, 1, sd * sd)};
  return d;
}

Density mvnormal_density(const Vector& mean, const Matrix& cov) {
  auto core = std::make_shared<MvnCore>(mean, cov);
  Density d;
  d.dim = static_cast<int>(mean.size());
  d.support = Box::unbounded(d.dim);
  d.log_pdf = [core](const Vector& x) { return core->log_pdf(x); };
  d.draw = [core](Rng& rng) { return core->draw(rng); };
  d.gaussian = GaussianSpec{mean, cov};
  return d;
}

Density student_t_density(double nu, double loc, double scale) {
  if (!(nu > 0.0) || !(scale > 0.0))
    throw Error("student_t_density: need nu > 0 and scale > 0");
  const double log_norm = std::lgamma(0.5 * (nu + 1.0)) -
                          std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * std::numbers::pi) -
                          std::log(scale);
  Density d;
  d.dim = 1;
  d.log_pdf = [nu, loc, scale, log_norm](const Vector& x) {
    const double u = (x(0) - loc) / scale;
    return log_norm - 0.5 * (nu + 1.0) * std::log1p(u * u / nu);
  };
  d.draw = [nu, loc, scale](Rng& rng) {
    std::student_t_distribution<double> td(nu);
    return vec1(loc + scale * td(rng));
  };
  return d;
}

Density cauchy_density(double loc, double scale) {
  if (!(scale > 0.0)) throw Error("cauchy_density: scale must be positive");
  Density d;
  d.dim = 1;
  d.log_pdf = [loc, scale](const Vector& x) {
    const double u = (x(0) - loc) / scale;
    return -std::log(std::numbers::pi * scale) - std::log1p(u * u);
  };
  d.draw = [loc, scale](Rng& rng) {
    std::cauchy_distribution<double> cd(loc, scale);
    return vec1(cd(rng));
  };
  return d;
}

Density gaussian_mixture_density(const std::vector<GaussianSpec>& components,
                                 const Vector& weights) {
  if (components.empty() ||
      weights.size() != static_cast<Eigen::Index>(components.size()))
    throw Error("gaussian_mixture_density: bad component spec");
  if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > 1e-12)
    throw Error("gaussian_mixture_density: weights must sum to 1");
  auto cores = std::make_shared<std::vector<MvnCore>>();
  for (const auto& c : components) cores->emplace_back(c.mean, c.cov);
  const Vector w = weights;
  Density d;
  d.dim = static_cast<int>(components.front().mean.size());
  d.support = Box::unbounded(d.dim);
  d.log_pdf = [cores, w](const Vector& x) {
    double acc = kNegInf;
    for (size_t i = 0; i < cores->size(); ++i) {
      if (w(static_cast<Eigen::Index>(i)) <= 0.0) continue;
      const double term = std::log(w(static_cast<Eigen::Index>(i))) +
                          (*cores)[i].log_pdf(x);
      if (acc == kNegInf) {
        acc = term;
      } else {
        const double m = std::max(acc, term);
        acc = m + std::log(std::exp(acc - m) + std::exp(term - m));
      }
    }
    return acc;
  };
  d.draw = [cores, w](Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng), cum = 0.0;
    size_t i = 0;
    for (; i + 1 < cores->size(); ++i) {
      cum += w(static_cast<Eigen::Index>(i));
      if (u < cum) break;
    }
    return (*cores)[i].draw(rng);
  };
  return d;
}

Density builtin_density(const std::string& kind,
                        const std::vector<double>& params) {
  auto need = [&](size_t n) {
    if (params.size() != n)
      throw ConfigError("builtin_density '" + kind + "': expected " +
                        std::to_string(n) + " parameters");
  };
  if (kind == "normal") {
    need(2);
    return normal_density(params[0], params[1]);
  }
  if (kind == "student_t") {
    need(3);
    return student_t_density(params[0], params[1], params[2]);
  }
  if (kind == "cauchy") {
    need(2);
    return cauchy_density(params[0], params[1]);
  }
  throw ConfigError("builtin_density: unknown kind '" + kind + "'");
}

Density mixture_example_density() {
  const auto comps = mixture_example_components();
  return gaussian_mixture_density(comps, Vector::Constant(2, 0.5));
}

std::vector<GaussianSpec> mixture_example_components() {
  GaussianSpec c1{Vector::Zero(2), Matrix::Identity(2, 2)};
  GaussianSpec c2{vec2(10.0, 10.0), 2.0 * Matrix::Identity(2, 2)};
  return {c1, c2};
}

TargetModel mixture_example_target() {
  return target_from_density(mixture_example_density());
}

namespace {

double six_mode_log_density(double x1, double x2) {
  const double s = std::sin(x2);
  if (s == 0.0) return kNegInf;
  const double csc = 1.0 / s;
  const double c5 = csc * csc * csc * csc * csc;
  if (!std::isfinite(c5)) return kNegInf;
  const double r = c5 - x1;
  const double val = -0.5 * x1 * x1 - 0.5 * r * r;
  return std::isfinite(val) ? val : kNegInf;
}

}  // namespace

TargetModel six_mode_target() {
  TargetModel t;
  t.dim = 2;
  t.support = Box::bounded(Vector::Constant(2, -10.0), Vector::Constant(2, 10.0));
  Box box = t.support;
  t.log_density = [box](const Vector& x) {
    if (!box.contains(x)) return kNegInf;
    return six_mode_log_density(x(0), x(1));
  };
  return t;
}

Density six_mode_conditional(int axis, double fixed) {
  if (axis != 0 && axis != 1)
    throw Error("six_mode_conditional: axis must be 0 or 1");
  Density d;
  d.dim = 1;
  d.normalized = false;
  d.support = Box::bounded(vec1(-10.0), vec1(10.0));
  Box box = d.support;
  if (axis == 0) {
    d.log_pdf = [fixed, box](const Vector& x) {
      if (!box.contains(x)) return kNegInf;
      return six_mode_log_density(x(0), fixed);
    };
  } else {
    d.log_pdf = [fixed, box](const Vector& x) {
      if (!box.contains(x)) return kNegInf;
      return six_mode_log_density(fixed, x(0));
    };
  }
  return d;
}

int six_mode_basin(double x2) {
  constexpr double pi = std::numbers::pi;
  // modes live in the six inter-pole intervals (k*pi, (k+1)*pi), k = -3..2
  const double t = x2 / pi;
  if (t <= -3.0 || t >= 3.0) return -1;
  const int k = static_cast<int>(std::floor(t));
  return k + 3;  // 0..5
}

// ---- logistic posterior ---------------------------------------------------

namespace {

struct LogisticCore {
  LogisticPosterior lp;
  Matrix prior_prec;

  explicit LogisticCore(LogisticPosterior p) : lp(std::move(p)) {
    Eigen::LLT<Matrix> llt(lp.Sigma0);
    if (llt.info() != Eigen::Success)
      throw IllConditionedError("logistic posterior: prior covariance not SPD");
    prior_prec = llt.solve(Matrix::Identity(lp.Sigma0.rows(), lp.Sigma0.cols()));
  }
};

void check_logistic_dims(const LogisticPosterior& lp, const Vector& beta) {
  const Eigen::Index m = lp.W.rows(), p = lp.W.cols();
  if (beta.size() != p || lp.z.size() != m || lp.mu0.size() != p ||
      lp.Sigma0.rows() != p || lp.Sigma0.cols() != p)
    throw DimensionError("logistic posterior: dimension mismatch");
}

}  // namespace

double logistic_log_post(const LogisticPosterior& lp, const Vector& beta) {
  check_logistic_dims(lp, beta);
  const Vector eta = lp.W * beta;
  double data = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    data += lp.z(i) * eta(i) - log1pexp(eta(i));
  Eigen::LLT<Matrix> llt(lp.Sigma0);
  if (llt.info() != Eigen::Success)
    throw IllConditionedError("logistic posterior: prior covariance not SPD");
  const Vector diff = beta - lp.mu0;
  const double logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double prior = -0.5 * (static_cast<double>(beta.size()) * kLogTwoPi +
                               logdet + diff.dot(llt.solve(diff)));
  return data + prior;
}

Vector logistic_gradient(const LogisticPosterior& lp, const Vector& beta) {
  check_logistic_dims(lp, beta);
  const Vector eta = lp.W * beta;
  Vector xi(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) xi(i) = logistic_fn(eta(i));
  Eigen::LLT<Matrix> llt(lp.Sigma0);
  return lp.W.transpose() * (lp.z - xi) - llt.solve(beta - lp.mu0);
}

Matrix logistic_hessian(const LogisticPosterior& lp, const Vector& beta) {
  check_logistic_dims(lp, beta);
  const Vector eta = lp.W * beta;
  Vector lam(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double xi = logistic_fn(eta(i));
    lam(i) = xi * (1.0 - xi);
  }
  Eigen::LLT<Matrix> llt(lp.Sigma0);
  const Matrix prior_prec =
      llt.solve(Matrix::Identity(beta.size(), beta.size()));
  return -lp.W.transpose() * lam.asDiagonal() * lp.W - prior_prec;
}

Matrix logistic_hessian_deriv(const LogisticPosterior& lp, const Vector& beta,
                              int j) {
  check_logistic_dims(lp, beta);
  if (j < 0 || j >= beta.size())
    throw DimensionError("logistic_hessian_deriv: bad coordinate");
  const Vector eta = lp.W * beta;
  Vector gam(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double xi = logistic_fn(eta(i));
    gam(i) = xi * (1.0 - xi) * (1.0 - 2.0 * xi) * lp.W(i, j);
  }
  return -lp.W.transpose() * gam.asDiagonal() * lp.W;
}

TargetModel logistic_target(const LogisticPosterior& lp) {
  auto core = std::make_shared<LogisticCore>(lp);
  TargetModel t;
  t.dim = static_cast<int>(lp.W.cols());
  t.support = Box::unbounded(t.dim);
  t.log_density = [core](const Vector& b) {
    return logistic_log_post(core->lp, b);
  };
  t.gradient = [core](const Vector& b) {
    return logistic_gradient(core->lp, b);
  };
  t.hessian = [core](const Vector& b) {
    return logistic_hessian(core->lp, b);
  };
  t.hessian_deriv = [core](const Vector& b, int j) {
    return logistic_hessian_deriv(core->lp, b, j);
  };
  return t;
}

Vector logistic_map_estimate(const LogisticPosterior& lp, int max_iter) {
  Vector beta = lp.mu0;
  for (int it = 0; it < max_iter; ++it) {
    const Vector g = logistic_gradient(lp, beta);
    const Matrix h = logistic_hessian(lp, beta);
    const Vector step = (-h).ldlt().solve(g);
    beta += step;
    if (step.norm() < 1e-10) break;
  }
  return beta;
}

LogisticPosterior simulate_logistic(int m, const Vector& beta_true,
                                    std::uint64_t seed, double prior_var) {
  const int p = static_cast<int>(beta_true.size());
  Rng rng = make_rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  LogisticPosterior lp;
  lp.W = Matrix(m, p);
  for (int i = 0; i < m; ++i) {
    lp.W(i, 0) = 1.0;  // intercept
    for (int j = 1; j < p; ++j) lp.W(i, j) = nd(rng);
  }
  lp.z = Vector(m);
  for (int i = 0; i < m; ++i) {
    const double prob = logistic_fn(lp.W.row(i).dot(beta_true));
    lp.z(i) = unif(rng) < prob ? 1.0 : 0.0;
  }
  lp.mu0 = Vector::Zero(p);
  lp.Sigma0 = prior_var * Matrix::Identity(p, p);
  return lp;
}

LogisticPosterior load_logistic_data(const std::string& path,
                                     const std::string& response_column,
                                     double prior_var) {
  std::ifstream in(path);
  if (!in) throw ConfigError("load_logistic_data: cannot open " + path);
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string tok;
    for (char c : line) {
      if (c == ',' || c == '\t' || c == ';' || c == ' ') {
        if (!tok.empty()) out.push_back(tok);
        tok.clear();
      } else if (c != '\r') {
        tok += c;
      }
    }
    if (!tok.empty()) out.push_back(tok);
    return out;
  };
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("load_logistic_data: empty file " + path);
  const auto header = split(line);
  int resp_col = -1;
  for (size_t j = 0; j < header.size(); ++j)
    if (header[j] == response_column) resp_col = static_cast<int>(j);
  if (resp_col < 0)
    throw ConfigError("load_logistic_data: response column '" +
                      response_column + "' not found");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    const auto toks = split(line);
    if (toks.empty()) continue;
    if (toks.size() != header.size())
      throw ConfigError("load_logistic_data: ragged row in " + path);
    std::vector<double> row;
    for (const auto& t : toks) row.push_back(std::stod(t));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("load_logistic_data: no data rows");
  const int m = static_cast<int>(rows.size());
  const int p = static_cast<int>(header.size()) - 1;
  LogisticPosterior lp;
  lp.W = Matrix(m, p);
  lp.z = Vector(m);
  for (int i = 0; i < m; ++i) {
    int jj = 0;
    for (int j = 0; j < static_cast<int>(header.size()); ++j) {
      if (j == resp_col) {
        const double zi = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (zi != 0.0 && zi != 1.0)
          throw ConfigError("load_logistic_data: response must be 0/1");
        lp.z(i) = zi;
      } else {
        lp.W(i, jj++) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
    }
  }
  lp.mu0 = Vector::Zero(p);
  lp.Sigma0 = prior_var * Matrix::Identity(p, p);
  return lp;
}

}  // namespace gmh
