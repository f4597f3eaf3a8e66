#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmh/ordering.hpp"
#include "gmh/verify.hpp"
#include "test_util.hpp"

using namespace gmh;

namespace {

Vector seeded_pmf(int n, std::uint64_t seed, double spread = 1.5) {
  Rng rng = make_rng(seed);
  Vector v(n);
  for (int i = 0; i < n; ++i)
    v(i) = std::exp(spread * test::randn_vector(rng, 1)(0));
  return v / v.sum();
}

Matrix rows_of(const Vector& pmf) {
  Matrix m(pmf.size(), pmf.size());
  for (Eigen::Index x = 0; x < pmf.size(); ++x) m.row(x) = pmf.transpose();
  return m;
}

FiniteChain two_state_chain(double a, double b) {
  FiniteChain c;
  c.P = Matrix(2, 2);
  c.P << 1.0 - a, a, b, 1.0 - b;
  c.pi = Vector(2);
  c.pi << b / (a + b), a / (a + b);
  return c;
}

}  // namespace

TEST_CASE("two-state MH matrix matches the hand computation") {
  Matrix prop = Matrix::Constant(2, 2, 0.5);
  Vector psi(2);
  psi << 2.0 / 3.0, 1.0 / 3.0;
  const FiniteChain c = mh_transition_matrix(prop, psi);
  CHECK(c.P(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.P(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.P(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
  c.validate(1e-12);
  CHECK(c.reversible(1e-15));
}

TEST_CASE("identity proposal gives the identity chain with zero gap") {
  const int n = 4;
  const FiniteChain c =
      mh_transition_matrix(Matrix::Identity(n, n), seeded_pmf(n, 1));
  CHECK((c.P - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(spectral_gap(c) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("assembled MH chains keep the target stationary") {
  for (std::uint64_t seed : {2u, 3u, 4u}) {
    const Vector psi = seeded_pmf(12, seed);
    const Vector prop = seeded_pmf(12, seed + 100, 0.7);
    const FiniteChain c = mh_transition_matrix(rows_of(prop), psi);
    const Vector piP = c.P.transpose() * c.pi;
    CHECK((piP - c.pi).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(c.reversible(1e-12));
  }
}

TEST_CASE("mh_transition_matrix validates inputs") {
  Vector psi(2);
  psi << 0.5, 0.5;
  Matrix bad_rows(2, 2);
  bad_rows << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS_AS(mh_transition_matrix(bad_rows, psi), Error);
  Vector zero_psi(2);
  zero_psi << 1.0, 0.0;
  CHECK_THROWS_AS(
      mh_transition_matrix(Matrix::Constant(2, 2, 0.5), zero_psi), Error);
}

TEST_CASE("two-state spectral gap is 1 - |1 - a - b|") {
  for (auto [a, b] : {std::pair{0.3, 0.5}, std::pair{0.9, 0.8},
                      std::pair{0.05, 0.6}}) {
    const FiniteChain c = two_state_chain(a, b);
    CHECK(spectral_gap(c) ==
          doctest::Approx(1.0 - std::abs(1.0 - a - b)).epsilon(1e-12));
  }
}

TEST_CASE("iid chain: unit gap and asymptotic variance sigma^2") {
  const Vector psi = seeded_pmf(8, 5);
  FiniteChain c;
  c.P = rows_of(psi);
  c.pi = psi;
  CHECK(spectral_gap(c) == doctest::Approx(1.0).epsilon(1e-10));
  Rng rng = make_rng(6);
  for (int rep = 0; rep < 5; ++rep) {
    Vector t = test::randn_vector(rng, 8);
    t.array() -= psi.dot(t);
    const double sigma2 = (psi.array() * t.array().square()).sum();
    CHECK(asymptotic_variance(c, t) == doctest::Approx(sigma2).epsilon(1e-10));
  }
}

TEST_CASE("two-state asymptotic variance matches the closed form") {
  const FiniteChain c = two_state_chain(0.3, 0.4);
  Rng rng = make_rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    Vector t = test::randn_vector(rng, 2);
    t.array() -= c.pi.dot(t);
    const double sigma2 = (c.pi.array() * t.array().square()).sum();
    const double lambda = 1.0 - 0.3 - 0.4;
    const double expected = sigma2 * (1.0 + lambda) / (1.0 - lambda);
    CHECK(asymptotic_variance(c, t) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("asymptotic variance agrees with long-run simulation") {
  const FiniteChain c = two_state_chain(0.35, 0.2);
  Vector t(2);
  t << 1.0, 0.0;
  t.array() -= c.pi.dot(t);
  const double v = asymptotic_variance(c, t);

  Rng rng = make_rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int reps = 200, n = 4000;
  double acc = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    int x = unif(rng) < c.pi(0) ? 0 : 1;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      x = unif(rng) < c.P(x, 0) ? 0 : 1;
      sum += t(x);
    }
    const double mean = sum / n;
    acc += static_cast<double>(n) * mean * mean;
  }
  const double sim = acc / reps;
  CHECK(std::abs(sim - v) / v < 0.10);
}

TEST_CASE("theorem-1 orderings: equal chains give constant one and hold") {
  const Vector psi = seeded_pmf(10, 9);
  const FiniteChain q = mh_transition_matrix(rows_of(seeded_pmf(10, 10, 0.5)), psi);
  const OrderingReport rep = verify_theorem1(q, q, 50, 11);
  CHECK(rep.peskun_constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.holds(1e-10));
}

TEST_CASE("theorem-1 orderings hold for a geometric/base pair") {
  const int n = 20;
  const Vector psi = seeded_pmf(n, 12);
  const Matrix f_rows = rows_of(seeded_pmf(n, 13, 0.6));
  const DiscreteGeometric geo =
      discrete_geometric_proposal(f_rows, {rows_of(psi)}, Vector::Ones(1), 0.5);
  const FiniteChain q = mh_transition_matrix(f_rows, psi);
  const FiniteChain p = mh_transition_matrix(geo.phi, psi);
  const OrderingReport rep = verify_theorem1(p, q, 100, 14);
  CHECK(rep.holds(1e-9));
  CHECK(rep.peskun_constant > 0.0);
}

TEST_CASE("peskun constant ignores the diagonal") {
  FiniteChain p = two_state_chain(0.5, 0.25);
  FiniteChain q = two_state_chain(0.5, 0.25);
  // different diagonals cannot influence the constant on a 2-state space
  const OrderingReport rep = verify_theorem1(p, q, 10, 15);
  CHECK(rep.peskun_constant == doctest::Approx(1.0));
}

TEST_CASE("verify_theorem1 rejects chains with different targets") {
  const FiniteChain a = two_state_chain(0.3, 0.3);
  const FiniteChain b = two_state_chain(0.1, 0.4);
  CHECK_THROWS_AS(verify_theorem1(a, b, 10, 16), Error);
}

TEST_CASE("discrete geometric proposal rows are pmfs and reduce at eps 0") {
  const int n = 12;
  const Vector psi = seeded_pmf(n, 17);
  const Matrix f_rows = rows_of(seeded_pmf(n, 18, 0.4));
  const DiscreteGeometric geo0 =
      discrete_geometric_proposal(f_rows, {rows_of(psi)}, Vector::Ones(1), 0.0);
  CHECK((geo0.phi - f_rows).cwiseAbs().maxCoeff() == 0.0);
  const DiscreteGeometric geo =
      discrete_geometric_proposal(f_rows, {rows_of(psi)}, Vector::Ones(1), 0.7);
  for (int x = 0; x < n; ++x) {
    CHECK(geo.phi.row(x).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(geo.phi.row(x).minCoeff() >= 0.0);
  }
}

TEST_CASE("five-state geometric MH chain is exactly reversible") {
  const int n = 5;
  const Vector psi = seeded_pmf(n, 19);
  const Matrix f_rows = rows_of(seeded_pmf(n, 20, 0.8));
  const DiscreteGeometric geo =
      discrete_geometric_proposal(f_rows, {rows_of(psi)}, Vector::Ones(1), 0.5);
  const FiniteChain p = mh_transition_matrix(geo.phi, psi);
  CHECK(p.reversibility_gap() < 1e-12);
  // the pick-one-direction variant has the same stationary pmf
  Matrix alg2 = mh_transition_matrix(geo.phi_i[0], psi).P;
  const Vector piP = alg2.transpose() * psi;
  CHECK((piP - psi).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("c_eps bound: one at eps zero, corollary form for independent pairs") {
  const int n = 10;
  const Vector psi = seeded_pmf(n, 21);
  const Vector f0 = seeded_pmf(n, 22, 0.5);
  const Matrix f_rows = rows_of(f0);
  const std::vector<Matrix> g_rows = {rows_of(psi)};
  CHECK(c_epsilon_bound(f_rows, g_rows, Vector::Ones(1), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const double eps = 0.6;
  const double aff = (f0.array() * psi.array()).sqrt().sum();
  const double theta = std::acos(aff);
  double d_inf = kInf;
  for (int y = 0; y < n; ++y) {
    const double r = std::sqrt(psi(y) / f0(y));
    d_inf = std::min(d_inf, (r - aff) * (r - aff) / (1.0 - aff * aff));
  }
  const double expected = std::cos(eps * theta) * std::cos(eps * theta) +
                          std::sin(eps * theta) * std::sin(eps * theta) * d_inf;
  CHECK(c_epsilon_bound(f_rows, g_rows, Vector::Ones(1), eps) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("c_eps bound is dominated by the empirical ratio") {
  const int n = 10;
  const Vector psi = seeded_pmf(n, 23);
  const Matrix f_rows = rows_of(seeded_pmf(n, 24, 0.7));
  const std::vector<Matrix> g_rows = {rows_of(psi)};
  const double eps = 0.5;
  const double c_eps = c_epsilon_bound(f_rows, g_rows, Vector::Ones(1), eps);
  const DiscreteGeometric geo =
      discrete_geometric_proposal(f_rows, g_rows, Vector::Ones(1), eps);
  const FiniteChain p = mh_transition_matrix(geo.phi, psi);
  const FiniteChain q = mh_transition_matrix(f_rows, psi);
  double ratio = kInf;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && q.P(x, y) > 0.0)
        ratio = std::min(ratio, p.P(x, y) / q.P(x, y));
  CHECK(c_eps <= ratio + 1e-9);
}

TEST_CASE("uniform ergodicity: matched proposal converges in one step") {
  const Vector psi = seeded_pmf(6, 25);
  const UniformErgodicityReport rep = uniform_ergodicity_bound(psi, psi, 10);
  CHECK(rep.beta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.tv_sup(0) < 1e-14);
  CHECK(rep.bound_holds);
}

TEST_CASE("discretized unit-shift proposal loses its minorization leftward") {
  auto grid_pmf = [](double lo, double hi, int n, double mean) {
    Vector v(n);
    for (int i = 0; i < n; ++i) {
      const double x = lo + (hi - lo) * i / (n - 1);
      v(i) = std::exp(-0.5 * (x - mean) * (x - mean));
    }
    return Vector(v / v.sum());
  };
  const int n = 200;
  const Vector psi_a = grid_pmf(-8.0, 4.0, n, 0.0);
  const Vector f_a = grid_pmf(-8.0, 4.0, n, 1.0);
  const Vector psi_b = grid_pmf(-16.0, 4.0, n, 0.0);
  const Vector f_b = grid_pmf(-16.0, 4.0, n, 1.0);
  const double beta_a = uniform_ergodicity_bound(f_a, psi_a, 5).beta;
  const double beta_b = uniform_ergodicity_bound(f_b, psi_b, 5).beta;
  CHECK(beta_b < beta_a);
  CHECK(beta_b < 1e-4);
}

TEST_CASE("geometric perturbation restores the minorization bound") {
  // discretized unit-shift example with g = psi. With v = exp(x/2 - 1/4),
  // phi/psi = s^2/D + A v^2 - B v for A = c^2 + s^2 e^{-1/4}/D and
  // B = 2 s^2 e^{-1/8}/D, so the exact minimum is s^2/D - B^2/(4A). This is
  // the corrected closed form; the printed one drops the cross-term factor
  // of two and the e^{-1/4} piece of A, overstating the minimum.
  const int n = 500;
  const double lo = -12.0, hi = 6.0;
  Vector psi(n), f(n);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    psi(i) = std::exp(-0.5 * x * x);
    f(i) = std::exp(-0.5 * (x - 1.0) * (x - 1.0));
  }
  psi /= psi.sum();
  f /= f.sum();
  const double eps = 0.5;
  const DiscreteGeometric geo = discrete_geometric_proposal(
      rows_of(f), {rows_of(psi)}, Vector::Ones(1), eps);
  const UniformErgodicityReport rep =
      uniform_ergodicity_bound(geo.phi.row(0), psi, 50);

  const double t = std::acos(std::exp(-0.125));
  const double s2 = std::sin(eps * t) * std::sin(eps * t);
  const double c2 = std::cos(eps * t) * std::cos(eps * t);
  const double d = 1.0 - std::exp(-0.25);
  const double a_coef = c2 + s2 * std::exp(-0.25) / d;
  const double b_coef = 2.0 * s2 * std::exp(-0.125) / d;
  const double analytic = s2 / d - b_coef * b_coef / (4.0 * a_coef);
  CHECK(rep.beta > 0.0);
  CHECK(rep.beta == doctest::Approx(analytic).epsilon(2e-3));
  CHECK(rep.bound_holds);
}

TEST_CASE("shipped fixtures pass and a doctored matrix is caught") {
  const auto fixtures = default_ordering_fixtures();
  CHECK(fixtures.size() == 10);
  bool has20 = false;
  for (const auto& fx : fixtures) has20 = has20 || fx.psi.size() == 20;
  CHECK(has20);
  const VerifySuite ok = run_ordering_verification(fixtures, 20, false);
  CHECK(ok.all_pass());
  const VerifySuite bad = run_ordering_verification(fixtures, 5, true);
  CHECK_FALSE(bad.all_pass());
}
