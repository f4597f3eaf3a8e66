#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmh/diagnostics.hpp"
#include "test_util.hpp"

using namespace gmh;

namespace {

Vector ar1_series(double rho, long n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector x(n);
  x(0) = nd(rng);
  const double s = std::sqrt(1.0 - rho * rho);
  for (long i = 1; i < n; ++i) x(i) = rho * x(i - 1) + s * nd(rng);
  return x;
}

}  // namespace

TEST_CASE("msjd: constant chain zero, alternating chain one") {
  Matrix constant = Matrix::Constant(50, 1, 3.0);
  CHECK(msjd(constant) == 0.0);
  Matrix alternating(100, 1);
  for (int i = 0; i < 100; ++i) alternating(i, 0) = i % 2;
  CHECK(msjd(alternating) == 1.0);
  CHECK_THROWS_AS(msjd(Matrix::Zero(1, 1)), Error);
}

TEST_CASE("acf of white noise vanishes beyond lag zero") {
  Rng rng = make_rng(1);
  const long n = 20000;
  Vector x = test::randn_vector(rng, static_cast<int>(n));
  const Vector r = acf(x, 8);
  CHECK(r(0) == 1.0);
  const double band = 3.0 / std::sqrt(static_cast<double>(n));
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(r(k)) < band);
}

TEST_CASE("acf of an AR(1) chain decays geometrically") {
  const Vector x = ar1_series(0.5, 100000, 2);
  const Vector r = acf(x, 8);
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(r(k) - std::pow(0.5, k)) < 0.03);
}

TEST_CASE("acf input validation") {
  Rng rng = make_rng(3);
  CHECK_THROWS_AS(acf(test::randn_vector(rng, 50), 10), Error);
  CHECK_THROWS_AS(acf(Vector::Zero(1000), 8), Error);
}

TEST_CASE("ess of an iid chain is close to n") {
  Rng rng = make_rng(4);
  const long n = 10000;
  const Vector x = test::randn_vector(rng, static_cast<int>(n));
  const double e = ess(x);
  CHECK(e / static_cast<double>(n) > 0.8);
  CHECK(e / static_cast<double>(n) < 1.2);
}

TEST_CASE("ess of an AR(1) chain matches n/3") {
  const long n = 100000;
  const Vector x = ar1_series(0.5, n, 10);
  const double e = ess(x);
  const double expected = static_cast<double>(n) / 3.0;
  CHECK(std::abs(e - expected) / expected < 0.15);
}

TEST_CASE("ess stays near or below n for positively correlated chains") {
  for (double rho : {0.2, 0.5, 0.8}) {
    const Vector x = ar1_series(rho, 50000, 11);
    CHECK(ess(x) <= 50000.0 * 1.2);
  }
}

TEST_CASE("ess error paths") {
  CHECK_THROWS_AS(ess(Vector::Zero(50)), Error);       // too short
  CHECK_THROWS_AS(ess(Vector::Constant(1000, 2.0)), Error);  // constant
}

TEST_CASE("multivariate ess: iid bivariate chain near n") {
  Rng rng = make_rng(6);
  const long n = 10000;
  Matrix x(n, 2);
  for (long i = 0; i < n; ++i) x.row(i) = test::randn_vector(rng, 2).transpose();
  const double e = multivariate_ess(x);
  CHECK(e / static_cast<double>(n) > 0.7);
  CHECK(e / static_cast<double>(n) < 1.3);
}

TEST_CASE("multivariate ess agrees with ess in one dimension") {
  Rng rng = make_rng(7);
  const long n = 20000;
  Matrix x(n, 1);
  for (long i = 0; i < n; ++i) x(i, 0) = test::randn_vector(rng, 1)(0);
  const double univariate = ess(x.col(0));
  const double multivariate = multivariate_ess(x);
  CHECK(std::abs(multivariate - univariate) / univariate < 0.10);
}

TEST_CASE("multivariate ess rejects singular covariances") {
  Rng rng = make_rng(8);
  Matrix x(1000, 2);
  for (long i = 0; i < 1000; ++i) {
    const double v = test::randn_vector(rng, 1)(0);
    x(i, 0) = v;
    x(i, 1) = 2.0 * v;  // perfectly correlated coordinates
  }
  CHECK_THROWS_AS(multivariate_ess(x), Error);
}

TEST_CASE("diagnostics reports are deterministic and serializable") {
  const Vector x = ar1_series(0.3, 5000, 9);
  Matrix states(5000, 1);
  states.col(0) = x;
  const DiagnosticsReport a = diagnose(states, 0.4, 8);
  const DiagnosticsReport b = diagnose(states, 0.4, 8);
  CHECK(a.ess_per_coordinate(0) == b.ess_per_coordinate(0));
  CHECK(a.msjd_value == b.msjd_value);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_text().find("msjd") != std::string::npos);
  CHECK(a.to_csv().find("acf_lag8") != std::string::npos);
}
