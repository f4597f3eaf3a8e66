#include "gmh/quadrature.hpp"

#include <cmath>

namespace gmh {

namespace {

Vector trapezoid_weights(const Vector& x) {
  const Eigen::Index n = x.size();
  Vector w(n);
  if (n == 1) {
    w(0) = 0.0;
    return w;
  }
  w(0) = 0.5 * (x(1) - x(0));
  w(n - 1) = 0.5 * (x(n - 1) - x(n - 2));
  for (Eigen::Index i = 1; i + 1 < n; ++i) w(i) = 0.5 * (x(i + 1) - x(i - 1));
  return w;
}

}  // namespace

Grid Grid::uniform(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw Error("Grid::uniform: need n >= 2 and hi > lo");
  Grid g;
  g.points = Vector::LinSpaced(n, lo, hi);
  g.weights = trapezoid_weights(g.points);
  return g;
}

Grid Grid::sinh_spaced(double half_width, int n, double scale) {
  if (n < 3 || half_width <= 0.0 || scale <= 0.0)
    throw Error("Grid::sinh_spaced: bad parameters");
  const double tmax = std::asinh(half_width / scale);
  Vector t = Vector::LinSpaced(n, -tmax, tmax);
  Grid g;
  g.points = (t.array().sinh() * scale).matrix();
  // force exact symmetry; sinh of a symmetric linspace already is, up to fp
  g.points(n / 2) = (n % 2 == 1) ? 0.0 : g.points(n / 2);
  g.weights = trapezoid_weights(g.points);
  g.tail_correct = true;
  return g;
}

double integrate(const Grid& grid, const Vector& values) {
  if (values.size() != grid.points.size())
    throw DimensionError("integrate: values/grid size mismatch");
  return grid.weights.dot(values);
}

double integrate(const Grid& grid, const std::function<double(double)>& f) {
  Vector v(grid.points.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = f(grid.points(i));
  return integrate(grid, v);
}

double algebraic_tail_mass(const Grid& grid, const Vector& values, bool upper) {
  const Eigen::Index n = grid.points.size();
  if (n < 3) return 0.0;
  double x1, x2, v1, v2;  // x1 outermost
  if (upper) {
    x1 = grid.points(n - 1);
    x2 = grid.points(n - 2);
    v1 = values(n - 1);
    v2 = values(n - 2);
  } else {
    x1 = -grid.points(0);
    x2 = -grid.points(1);
    v1 = values(0);
    v2 = values(1);
  }
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(x1 > x2) || !(x2 > 0.0)) return 0.0;
  if (v1 >= v2) return 0.0;  // not decaying outward
  const double k = std::log(v2 / v1) / std::log(x1 / x2);
  if (!(k > 1.0)) return 0.0;  // non-integrable tail; leave uncorrected
  // integral of v1*(x/x1)^-k over [x1, inf)
  return v1 * x1 / (k - 1.0);
}

double integrate_with_tails(const Grid& grid, const Vector& values) {
  double total = integrate(grid, values);
  if (grid.tail_correct) {
    total += algebraic_tail_mass(grid, values, false);
    total += algebraic_tail_mass(grid, values, true);
  }
  return total;
}

}  // namespace gmh
