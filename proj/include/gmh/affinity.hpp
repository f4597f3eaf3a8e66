#pragma once

#include "gmh/density.hpp"
#include "gmh/quadrature.hpp"
#include "gmh/rng.hpp"
#include "gmh/types.hpp"

namespace gmh {

enum class AffinityMethod { ClosedForm, Quadrature, MonteCarlo };

/// Bhattacharyya affinity <sqrt(f), sqrt(g)> in (0, 1] and the induced
/// geodesic angle arccos(value) in [0, pi/2).
struct Affinity {
  double value = 1.0;
  double angle = 0.0;
  AffinityMethod method = AffinityMethod::ClosedForm;
  long sample_size = 0;
  double std_error = 0.0;

  bool degenerate() const { return value >= 1.0 - 1e-9; }
};

Affinity make_affinity(double value, AffinityMethod method);

/// Closed-form affinity between two Gaussians.
Affinity gaussian_affinity(const Vector& mu1, const Matrix& cov1,
                           const Vector& mu2, const Matrix& cov2);
Affinity gaussian_affinity(const GaussianSpec& a, const GaussianSpec& b);

/// Deterministic 1-D quadrature affinity; both densities must be normalized
/// and the grid must carry essentially all of their mass.
Affinity quadrature_affinity(const Density& f, const Density& g,
                             const Grid& grid);

/// Tensor-grid variant for 2-D densities.
Affinity quadrature_affinity_2d(const Density& f, const Density& g,
                                const Grid& gx, const Grid& gy);

/// Monte-Carlo estimate mean sqrt(g(X)/f(X)), X ~ f. The estimate is clamped
/// to [1e-12, 1 - 1e-9] before arccos; MC noise can push the raw mean past 1.
Affinity importance_affinity(const Density& f, const Density& g, long n,
                             Rng& rng);

}  // namespace gmh
