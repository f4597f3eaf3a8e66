#pragma once

#include <cstdint>
#include <vector>

#include "gmh/types.hpp"

namespace gmh {

/// Exact transition matrix plus stationary pmf on a finite state space.
struct FiniteChain {
  Matrix P;
  Vector pi;

  int states() const { return static_cast<int>(P.rows()); }
  void validate(double tol = 1e-10) const;
  double reversibility_gap() const;  // max |pi_x P_xy - pi_y P_yx|
  bool reversible(double tol = 1e-10) const {
    return reversibility_gap() <= tol;
  }
};

/// Assemble the MH chain for proposal pmf matrix `proposal` (rows stochastic)
/// and strictly positive target pmf.
FiniteChain mh_transition_matrix(const Matrix& proposal, const Vector& target);

/// 1 - sup |lambda| over the spectrum restricted to mean-zero functions,
/// via the symmetrized similarity transform. Reversible chains only.
double spectral_gap(const FiniteChain& chain);

/// CLT asymptotic variance of ergodic averages of `t` by the spectral
/// formula sum (1+lambda)/(1-lambda) <t, e>^2_pi. Reversible chains only.
double asymptotic_variance(const FiniteChain& chain, const Vector& t);

/// lag-one autocovariance <P t, t>_pi for centered t.
double lag_one_covariance(const FiniteChain& chain, const Vector& t);

struct OrderingReport {
  double peskun_constant = 0.0;  // min off-diagonal P/Q over Q > 0
  double gap_p = 0.0;
  double gap_q = 0.0;
  double covariance_slack = kInf;  // min over trial t of rhs - lhs
  double gap_slack = 0.0;
  double variance_slack = kInf;
  int trials = 0;

  bool holds(double tol = 1e-9) const {
    return covariance_slack >= -tol && gap_slack >= -tol &&
           variance_slack >= -tol;
  }
};

/// Check the covariance / spectral-gap / asymptotic-variance orderings
/// implied by off-diagonal domination, over `trials` random test functions
/// (standard normal entries, centered and unit-variance under pi).
OrderingReport verify_theorem1(const FiniteChain& P, const FiniteChain& Q,
                               int trials, std::uint64_t seed);

// ---- exact geometric proposals on finite spaces -----------------------------

/// Per-direction data of the discrete eps-perturbed proposal. Row x of
/// `phi` is the mixture pmf; theta[i](x) the per-state angle.
struct DiscreteGeometric {
  Matrix phi;
  std::vector<Matrix> phi_i;
  std::vector<Vector> theta;
};

DiscreteGeometric discrete_geometric_proposal(const Matrix& f_rows,
                                              const std::vector<Matrix>& g_rows,
                                              const Vector& weights,
                                              double eps);

/// Analytic lower bound c_eps on the off-diagonal domination constant of the
/// geometric chain over its base chain (exact infima on the finite space).
double c_epsilon_bound(const Matrix& f_rows, const std::vector<Matrix>& g_rows,
                       const Vector& weights, double eps);

struct UniformErgodicityReport {
  double beta = 0.0;
  Vector tv_sup;  // tv_sup(n) = max_x TV(P^n(x,.), pi), n = 1..horizon
  bool bound_holds = false;  // tv_sup(n) <= (1 - beta)^n throughout
};

/// Independent-proposal chain with proposal pmf `phi` and target `psi`:
/// beta = min phi/psi and the exact n-step total-variation envelope.
UniformErgodicityReport uniform_ergodicity_bound(const Vector& phi,
                                                 const Vector& psi,
                                                 int horizon = 50);

}  // namespace gmh
