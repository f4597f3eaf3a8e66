#pragma once

#include "gmh/density.hpp"
#include "gmh/quadrature.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// A function sampled on a quadrature grid; the L2 geometry of square-root
/// density points lives here. Unit-norm GridFunctions are points on the
/// positive orthant of the unit sphere.
struct GridFunction {
  Grid grid;
  Vector values;

  double inner(const GridFunction& other) const;
  double norm() const;
  GridFunction scaled(double s) const;
};

/// sqrt of a density sampled on `grid`, renormalized to unit L2 norm.
GridFunction sqrt_density_point(const Density& d, const Grid& grid);
GridFunction sqrt_values_point(const Grid& grid, const Vector& pdf_values);

/// Geodesic (great-circle) distance arccos<rho1, rho2>.
double geodesic_distance(const GridFunction& rho1, const GridFunction& rho2);

/// Move rho along the geodesic tangent to `tangent`:
/// cos(|t|) rho + sin(|t|) t/|t|. Zero tangent returns rho.
GridFunction sphere_exp(const GridFunction& rho, const GridFunction& tangent);

/// Inverse of sphere_exp: the tangent at rho1 pointing to rho2 with norm
/// equal to the geodesic distance.
GridFunction sphere_log(const GridFunction& rho1, const GridFunction& rho2);

/// Transport a tangent at rho1 to the tangent space at rho2 along the
/// connecting geodesic; an isometry.
GridFunction parallel_transport(const GridFunction& tangent,
                                const GridFunction& rho1,
                                const GridFunction& rho2);

}  // namespace gmh
