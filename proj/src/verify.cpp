#include "gmh/verify.hpp"

#include <cmath>

#include "gmh/rng.hpp"

namespace gmh {

namespace {

Vector random_pmf(Rng& rng, int n, double spread) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::exp(spread * nd(rng));
  return v / v.sum();
}

Matrix stacked_rows(const Vector& pmf) {
  Matrix m(pmf.size(), pmf.size());
  for (Eigen::Index x = 0; x < pmf.size(); ++x) m.row(x) = pmf.transpose();
  return m;
}

// symmetric nearest-neighbor walk on a path, lazy at the boundary
Matrix local_walk_rows(int n) {
  Matrix q = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    if (x > 0) q(x, x - 1) = 0.5;
    if (x < n - 1) q(x, x + 1) = 0.5;
    q(x, x) = 1.0 - q.row(x).sum();
  }
  return q;
}

Vector tempered(const Vector& pmf, double tau) {
  Vector v = pmf.array().pow(tau);
  return v / v.sum();
}

}  // namespace

std::vector<OrderingFixture> default_ordering_fixtures() {
  std::vector<OrderingFixture> out;
  Rng rng = make_rng(20240917u);
  const double eps_values[4] = {0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 10; ++i) {
    OrderingFixture fx;
    const int n = 10 + 2 * i;
    fx.name = "fixture" + std::to_string(i) + "_n" + std::to_string(n);
    fx.psi = random_pmf(rng, n, 1.5);
    fx.eps = eps_values[i % 4];
    fx.independent_base = (i % 2 == 0);
    if (fx.independent_base) {
      fx.f_rows = stacked_rows(random_pmf(rng, n, 0.8));
    } else {
      fx.f_rows = local_walk_rows(n);
    }
    const int k = 1 + (i % 2);
    if (k == 1) {
      fx.g_rows.push_back(stacked_rows(fx.psi));
      fx.weights = Vector::Ones(1);
    } else {
      fx.g_rows.push_back(stacked_rows(fx.psi));
      fx.g_rows.push_back(stacked_rows(tempered(fx.psi, 0.5)));
      fx.weights = Vector::Constant(2, 0.5);
    }
    out.push_back(std::move(fx));
  }
  return out;
}

VerifySuite run_ordering_verification(
    const std::vector<OrderingFixture>& fixtures, int trials, bool corrupt) {
  VerifySuite suite;
  bool corrupted_once = !corrupt;
  int index = 0;
  for (const auto& fx : fixtures) {
    const int n = static_cast<int>(fx.psi.size());
    const DiscreteGeometric geo =
        discrete_geometric_proposal(fx.f_rows, fx.g_rows, fx.weights, fx.eps);
    FiniteChain base = mh_transition_matrix(fx.f_rows, fx.psi);
    FiniteChain geom = mh_transition_matrix(geo.phi, fx.psi);
    if (!corrupted_once) {
      // doctor one off-diagonal pair of the geometric matrix
      geom.P(0, n - 1) += 0.05;
      geom.P(0, 0) -= 0.05;
      corrupted_once = true;
    }

    auto push = [&](const std::string& check, bool pass, double value) {
      suite.checks.push_back(VerifyCheck{fx.name, check, pass, value});
    };

    // stationarity + reversibility of both chains
    bool stationary = true;
    try {
      base.validate(1e-10);
      geom.validate(1e-10);
    } catch (const std::exception&) {
      stationary = false;
    }
    push("stationarity", stationary, 0.0);
    const double rev_gap =
        std::max(base.reversibility_gap(), geom.reversibility_gap());
    push("reversibility", rev_gap <= 1e-10, rev_gap);

    // eps = 0 reduction
    const DiscreteGeometric geo0 =
        discrete_geometric_proposal(fx.f_rows, fx.g_rows, fx.weights, 0.0);
    const FiniteChain geom0 = mh_transition_matrix(geo0.phi, fx.psi);
    const double eps0_diff = (geom0.P - base.P).cwiseAbs().maxCoeff();
    push("eps0_reduction", eps0_diff <= 1e-12, eps0_diff);

    // covariance / gap / variance orderings
    if (stationary && rev_gap <= 1e-8) {
      const OrderingReport rep = verify_theorem1(
          geom, base, trials, 777000u + static_cast<unsigned>(index));
      push("covariance_ordering", rep.covariance_slack >= -1e-9,
           rep.covariance_slack);
      push("gap_ordering", rep.gap_slack >= -1e-9, rep.gap_slack);
      push("variance_ordering", rep.variance_slack >= -1e-9,
           rep.variance_slack);

      // analytic domination constant against the empirical one
      const double c_eps =
          c_epsilon_bound(fx.f_rows, fx.g_rows, fx.weights, fx.eps);
      push("peskun_bound", c_eps <= rep.peskun_constant + 1e-9,
           rep.peskun_constant - c_eps);
    } else {
      push("covariance_ordering", false, kNegInf);
      push("gap_ordering", false, kNegInf);
      push("variance_ordering", false, kNegInf);
      push("peskun_bound", false, kNegInf);
    }

    // full-mixture step dominates the pick-one-direction step off-diagonal
    Matrix alg2 = Matrix::Zero(n, n);
    for (size_t d = 0; d < fx.g_rows.size(); ++d)
      alg2 += fx.weights(static_cast<Eigen::Index>(d)) *
              mh_transition_matrix(geo.phi_i[d], fx.psi).P;
    double worst_dom = kInf;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y) worst_dom = std::min(worst_dom, geom.P(x, y) - alg2(x, y));
    push("mixture_domination", worst_dom >= -1e-12, worst_dom);

    // uniform ergodicity envelope for independent-base fixtures
    if (fx.independent_base) {
      const UniformErgodicityReport ue =
          uniform_ergodicity_bound(geo.phi.row(0), fx.psi, 50);
      push("tv_envelope", ue.beta > 0.0 && ue.bound_holds, ue.beta);
    }
    ++index;
  }
  return suite;
}

}  // namespace gmh
