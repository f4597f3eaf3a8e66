#include "gmh/sphere.hpp"

#include <cmath>

namespace gmh {

double GridFunction::inner(const GridFunction& other) const {
  if (values.size() != other.values.size())
    throw DimensionError("GridFunction::inner: size mismatch");
  return (grid.weights.array() * values.array() * other.values.array()).sum();
}

double GridFunction::norm() const { return std::sqrt(inner(*this)); }

GridFunction GridFunction::scaled(double s) const {
  GridFunction out = *this;
  out.values *= s;
  return out;
}

GridFunction sqrt_values_point(const Grid& grid, const Vector& pdf_values) {
  if ((pdf_values.array() < 0.0).any())
    throw Error("sqrt_values_point: negative density values");
  GridFunction rho;
  rho.grid = grid;
  rho.values = pdf_values.array().sqrt().matrix();
  const double n = rho.norm();
  if (!(n > 0.0)) throw Error("sqrt_values_point: zero mass on grid");
  rho.values /= n;
  return rho;
}

GridFunction sqrt_density_point(const Density& d, const Grid& grid) {
  Vector v(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    v(i) = std::exp(d.log_pdf(vec1(grid.points(i))));
  return sqrt_values_point(grid, v);
}

double geodesic_distance(const GridFunction& rho1, const GridFunction& rho2) {
  return std::acos(std::clamp(rho1.inner(rho2), -1.0, 1.0));
}

GridFunction sphere_exp(const GridFunction& rho, const GridFunction& tangent) {
  const double ip = tangent.inner(rho);
  if (std::abs(ip) > 1e-8)
    throw Error("sphere_exp: tangent not orthogonal to base point");
  const double t = tangent.norm();
  if (t == 0.0) return rho;
  GridFunction out = rho;
  out.values =
      std::cos(t) * rho.values + (std::sin(t) / t) * tangent.values;
  return out;
}

GridFunction sphere_log(const GridFunction& rho1, const GridFunction& rho2) {
  const double ip = std::clamp(rho1.inner(rho2), -1.0, 1.0);
  GridFunction out = rho1;
  if (ip >= 1.0) {
    out.values.setZero();
    return out;
  }
  const double theta = std::acos(ip);
  out.values = (theta / std::sin(theta)) * (rho2.values - ip * rho1.values);
  return out;
}

GridFunction parallel_transport(const GridFunction& tangent,
                                const GridFunction& rho1,
                                const GridFunction& rho2) {
  GridFunction sum = rho1;
  sum.values = rho1.values + rho2.values;
  const double denom = sum.inner(sum);
  if (denom < 1e-12)
    throw Error("parallel_transport: antipodal points");
  const double coef = 2.0 * tangent.inner(rho2) / denom;
  GridFunction out = tangent;
  out.values = tangent.values - coef * sum.values;
  return out;
}

}  // namespace gmh
