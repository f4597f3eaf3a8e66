#include "gmh/ordering.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "gmh/rng.hpp"

namespace gmh {

void FiniteChain::validate(double tol) const {
  const int n = states();
  if (P.cols() != n || pi.size() != n)
    throw DimensionError("FiniteChain: shape mismatch");
  if ((P.array() < -tol).any())
    throw Error("FiniteChain: negative transition probability");
  for (int x = 0; x < n; ++x)
    if (std::abs(P.row(x).sum() - 1.0) > 1e-12)
      throw Error("FiniteChain: row does not sum to one");
  if (std::abs(pi.sum() - 1.0) > 1e-10 || (pi.array() < 0.0).any())
    throw Error("FiniteChain: stationary pmf invalid");
  const Vector piP = P.transpose() * pi;
  if ((piP - pi).cwiseAbs().maxCoeff() > tol)
    throw Error("FiniteChain: pi is not stationary");
}

double FiniteChain::reversibility_gap() const {
  double worst = 0.0;
  const int n = states();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      worst = std::max(worst, std::abs(pi(x) * P(x, y) - pi(y) * P(y, x)));
  return worst;
}

FiniteChain mh_transition_matrix(const Matrix& proposal, const Vector& target) {
  const int n = static_cast<int>(proposal.rows());
  if (proposal.cols() != n || target.size() != n)
    throw DimensionError("mh_transition_matrix: shape mismatch");
  if ((target.array() <= 0.0).any())
    throw Error("mh_transition_matrix: target must be strictly positive");
  for (int x = 0; x < n; ++x)
    if (std::abs(proposal.row(x).sum() - 1.0) > 1e-10)
      throw Error("mh_transition_matrix: proposal rows must be stochastic");
  FiniteChain chain;
  chain.pi = target / target.sum();
  chain.P = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    double off = 0.0;
    for (int y = 0; y < n; ++y) {
      if (y == x || proposal(x, y) <= 0.0) continue;
      double alpha = 1.0;
      if (proposal(y, x) <= 0.0) {
        alpha = 0.0;  // irreversible proposal mass is never accepted
      } else {
        alpha = std::min(1.0, (chain.pi(y) * proposal(y, x)) /
                                  (chain.pi(x) * proposal(x, y)));
      }
      chain.P(x, y) = proposal(x, y) * alpha;
      off += chain.P(x, y);
    }
    chain.P(x, x) = 1.0 - off;
  }
  return chain;
}

namespace {

struct SpectralDecomposition {
  Vector eigenvalues;       // ascending
  Matrix vectors;           // columns, orthonormal in l2 of the symmetrized op
  Vector sqrt_pi;
  int top_index = -1;       // the Perron eigenvalue (== 1)
};

SpectralDecomposition symmetrized_spectrum(const FiniteChain& chain) {
  if (!chain.reversible(1e-8))
    throw Error("spectral analysis requires a reversible chain");
  const int n = chain.states();
  SpectralDecomposition out;
  out.sqrt_pi = chain.pi.array().sqrt();
  Matrix S(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      S(x, y) = out.sqrt_pi(x) * chain.P(x, y) / out.sqrt_pi(y);
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  out.eigenvalues = es.eigenvalues();
  out.vectors = es.eigenvectors();
  int top = 0;
  for (int i = 1; i < n; ++i)
    if (out.eigenvalues(i) > out.eigenvalues(top)) top = i;
  out.top_index = top;
  return out;
}

int unit_eigenvalue_multiplicity(const SpectralDecomposition& dec) {
  int near_one = 0;
  for (int i = 0; i < dec.eigenvalues.size(); ++i)
    if (dec.eigenvalues(i) > 1.0 - 1e-10) ++near_one;
  return near_one;
}

double gap_from_spectrum(const SpectralDecomposition& dec) {
  double sup = 0.0;
  for (int i = 0; i < dec.eigenvalues.size(); ++i) {
    if (i == dec.top_index) continue;
    sup = std::max(sup, std::abs(dec.eigenvalues(i)));
  }
  return 1.0 - sup;
}

double variance_from_spectrum(const SpectralDecomposition& dec,
                              const Vector& t) {
  if (unit_eigenvalue_multiplicity(dec) > 1)
    throw Error("spectral analysis: eigenvalue one has multiplicity > 1");
  const Vector w = dec.sqrt_pi.array() * t.array();
  double v = 0.0;
  for (int i = 0; i < dec.eigenvalues.size(); ++i) {
    if (i == dec.top_index) continue;
    const double lam = dec.eigenvalues(i);
    const double c = dec.vectors.col(i).dot(w);
    v += (1.0 + lam) / (1.0 - lam) * c * c;
  }
  return v;
}

}  // namespace

double spectral_gap(const FiniteChain& chain) {
  return gap_from_spectrum(symmetrized_spectrum(chain));
}

double asymptotic_variance(const FiniteChain& chain, const Vector& t) {
  return variance_from_spectrum(symmetrized_spectrum(chain), t);
}

double lag_one_covariance(const FiniteChain& chain, const Vector& t) {
  const Vector pt = chain.P * t;
  return (chain.pi.array() * pt.array() * t.array()).sum();
}

OrderingReport verify_theorem1(const FiniteChain& P, const FiniteChain& Q,
                               int trials, std::uint64_t seed) {
  const int n = P.states();
  if (Q.states() != n) throw DimensionError("verify_theorem1: size mismatch");
  if ((P.pi - Q.pi).cwiseAbs().maxCoeff() > 1e-8)
    throw Error("verify_theorem1: chains disagree on the stationary pmf");

  OrderingReport rep;
  rep.trials = trials;
  double c = kInf;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || Q.P(x, y) <= 0.0) continue;
      c = std::min(c, P.P(x, y) / Q.P(x, y));
    }
  if (c == kInf) c = 1.0;  // Q has no off-diagonal mass anywhere
  rep.peskun_constant = c;

  const auto dec_p = symmetrized_spectrum(P);
  const auto dec_q = symmetrized_spectrum(Q);
  rep.gap_p = gap_from_spectrum(dec_p);
  rep.gap_q = gap_from_spectrum(dec_q);
  rep.gap_slack = rep.gap_p - c * rep.gap_q;

  Rng rng = make_rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    Vector t(n);
    for (int i = 0; i < n; ++i) t(i) = nd(rng);
    const double mean = P.pi.dot(t);
    t.array() -= mean;
    const double sd = std::sqrt((P.pi.array() * t.array().square()).sum());
    if (!(sd > 0.0)) continue;
    t /= sd;  // sigma_t^2 = 1 under pi
    const double sigma2 = 1.0;
    const double cov_p = lag_one_covariance(P, t);
    const double cov_q = lag_one_covariance(Q, t);
    rep.covariance_slack = std::min(
        rep.covariance_slack, c * cov_q + (1.0 - c) * sigma2 - cov_p);
    const double v_p = variance_from_spectrum(dec_p, t);
    const double v_q = variance_from_spectrum(dec_q, t);
    rep.variance_slack = std::min(
        rep.variance_slack, v_q / c + (1.0 - c) / c * sigma2 - v_p);
  }
  return rep;
}

DiscreteGeometric discrete_geometric_proposal(const Matrix& f_rows,
                                              const std::vector<Matrix>& g_rows,
                                              const Vector& weights,
                                              double eps) {
  const int n = static_cast<int>(f_rows.rows());
  const int k = static_cast<int>(g_rows.size());
  if (weights.size() != k || k == 0)
    throw DimensionError("discrete_geometric_proposal: bad direction set");
  if (eps < 0.0 || eps > 1.0)
    throw Error("discrete_geometric_proposal: eps outside [0, 1]");
  DiscreteGeometric out;
  out.phi = Matrix::Zero(n, n);
  out.phi_i.assign(static_cast<size_t>(k), Matrix::Zero(n, n));
  out.theta.assign(static_cast<size_t>(k), Vector::Zero(n));
  for (int i = 0; i < k; ++i) {
    const Matrix& g = g_rows[static_cast<size_t>(i)];
    if (g.rows() != n || g.cols() != n)
      throw DimensionError("discrete_geometric_proposal: direction shape");
    for (int x = 0; x < n; ++x) {
      const Vector fx = f_rows.row(x);
      const Vector gx = g.row(x);
      const double aff = (fx.array() * gx.array()).sqrt().sum();
      if (aff >= 1.0 - 1e-9) {
        // degenerate direction: the perturbed pmf collapses to f
        out.theta[static_cast<size_t>(i)](x) = 0.0;
        out.phi_i[static_cast<size_t>(i)].row(x) = fx.transpose();
        continue;
      }
      const double theta = std::acos(std::min(aff, 1.0));
      out.theta[static_cast<size_t>(i)](x) = theta;
      const Vector h =
          (gx.array().sqrt() - aff * fx.array().sqrt()).square() /
          (1.0 - aff * aff);
      const double c2 = std::cos(eps * theta) * std::cos(eps * theta);
      const double s2 = std::sin(eps * theta) * std::sin(eps * theta);
      out.phi_i[static_cast<size_t>(i)].row(x) =
          (c2 * fx + s2 * h).transpose();
    }
    out.phi += weights(i) * out.phi_i[static_cast<size_t>(i)];
  }
  return out;
}

double c_epsilon_bound(const Matrix& f_rows, const std::vector<Matrix>& g_rows,
                       const Vector& weights, double eps) {
  const int n = static_cast<int>(f_rows.rows());
  const int k = static_cast<int>(g_rows.size());
  if (weights.size() != k) throw DimensionError("c_epsilon_bound: weights");
  double c_eps = 0.0;
  for (int i = 0; i < k; ++i) {
    const Matrix& g = g_rows[static_cast<size_t>(i)];
    double c_i = kInf;
    for (int x = 0; x < n; ++x) {
      const Vector fx = f_rows.row(x);
      const Vector gx = g.row(x);
      const double aff = (fx.array() * gx.array()).sqrt().sum();
      if (aff >= 1.0 - 1e-9) {
        c_i = std::min(c_i, 1.0);  // degenerate direction contributes f itself
        continue;
      }
      const double theta = std::acos(std::min(aff, 1.0));
      const double c2 = std::cos(eps * theta) * std::cos(eps * theta);
      const double s2 = std::sin(eps * theta) * std::sin(eps * theta);
      for (int y = 0; y < n; ++y) {
        if (fx(y) <= 0.0) continue;  // no base mass: domination vacuous there
        const double ratio = std::sqrt(gx(y) / fx(y));
        const double d = (ratio - aff) * (ratio - aff) / (1.0 - aff * aff);
        c_i = std::min(c_i, c2 + s2 * d);
      }
    }
    if (c_i == kInf) c_i = 1.0;
    c_eps += weights(i) * c_i;
  }
  return c_eps;
}

UniformErgodicityReport uniform_ergodicity_bound(const Vector& phi,
                                                 const Vector& psi,
                                                 int horizon) {
  const int n = static_cast<int>(phi.size());
  if (psi.size() != n) throw DimensionError("uniform_ergodicity_bound: size");
  UniformErgodicityReport rep;
  double beta = kInf;
  for (int y = 0; y < n; ++y) {
    if (psi(y) <= 0.0) continue;
    beta = std::min(beta, phi(y) / psi(y));
  }
  rep.beta = std::max(0.0, beta == kInf ? 0.0 : beta);

  Matrix proposal(n, n);
  for (int x = 0; x < n; ++x) proposal.row(x) = phi.transpose();
  const FiniteChain chain = mh_transition_matrix(proposal, psi);
  rep.tv_sup = Vector::Zero(horizon);
  Matrix Pn = chain.P;
  rep.bound_holds = rep.beta > 0.0;
  for (int step = 1; step <= horizon; ++step) {
    double worst = 0.0;
    for (int x = 0; x < n; ++x)
      worst = std::max(worst,
                       0.5 * (Pn.row(x).transpose() - chain.pi).cwiseAbs().sum());
    rep.tv_sup(step - 1) = worst;
    if (rep.beta > 0.0 &&
        worst > std::pow(1.0 - rep.beta, step) + 1e-12)
      rep.bound_holds = false;
    if (step < horizon) Pn = Pn * chain.P;
  }
  return rep;
}

}  // namespace gmh
