#pragma once

#include <functional>

#include "gmh/types.hpp"

namespace gmh {

/// 1-D quadrature grid: strictly increasing abscissae with trapezoid weights.
/// With `tail_correct` set, integrals of algebraically decaying integrands are
/// extended beyond the grid ends by fitting c*|x|^-k to the edge samples.
struct Grid {
  Vector points;
  Vector weights;
  bool tail_correct = false;

  static Grid uniform(double lo, double hi, int n);
  /// Symmetric grid on [-half_width, half_width], sinh-spaced so that points
  /// cluster near zero while still reaching far into heavy tails.
  static Grid sinh_spaced(double half_width, int n, double scale = 1.0);

  int size() const { return static_cast<int>(points.size()); }
};

double integrate(const Grid& grid, const Vector& values);
double integrate(const Grid& grid, const std::function<double(double)>& f);

/// Extrapolated mass of an algebraic tail beyond one grid end. Fits
/// c*|x|^-k through the two outermost strictly positive samples; zero when
/// the edge values vanish or do not decay.
double algebraic_tail_mass(const Grid& grid, const Vector& values, bool upper);

/// Integral plus both tail corrections (only when grid.tail_correct is set).
double integrate_with_tails(const Grid& grid, const Vector& values);

}  // namespace gmh
