#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "gmh/rng.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// Mean/covariance of an exactly Gaussian density. Carried alongside the
/// generic callable form so affinities can take the closed-form route.
struct GaussianSpec {
  Vector mean;
  Matrix cov;
};

/// An evaluable probability density (or pmf weight function) with an optional
/// exact sampler. `normalized` is false for densities known only up to a
/// constant.
struct Density {
  int dim = 1;
  bool normalized = true;
  Box support = Box::unbounded(1);
  std::function<double(const Vector&)> log_pdf;
  std::function<Vector(Rng&)> draw;  // empty when no exact sampler exists
  std::optional<GaussianSpec> gaussian;

  bool samplable() const { return static_cast<bool>(draw); }
  double log_at(double x) const { return log_pdf(vec1(x)); }
};

/// A state-conditional density family f(.|x). `state_free` marks independent
/// kernels whose density does not change with the conditioning state.
struct ConditionalDensity {
  bool state_free = false;
  std::function<Density(const Vector&)> at;

  static ConditionalDensity fixed(Density d) {
    ConditionalDensity c;
    c.state_free = true;
    c.at = [d = std::move(d)](const Vector&) { return d; };
    return c;
  }
};

}  // namespace gmh
