#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace gmh {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Vector vec1(double x) {
  Vector v(1);
  v(0) = x;
  return v;
}

inline Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Axis-aligned support box; +-inf bounds mean unbounded.
struct Box {
  Vector lo;
  Vector hi;

  static Box unbounded(int dim) {
    Box b;
    b.lo = Vector::Constant(dim, kNegInf);
    b.hi = Vector::Constant(dim, kInf);
    return b;
  }

  static Box bounded(const Vector& lo, const Vector& hi) { return Box{lo, hi}; }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Vector& x) const {
    if (x.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) < lo(i) || x(i) > hi(i)) return false;
    }
    return true;
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct IllConditionedError : Error {
  using Error::Error;
};

struct CoverageError : Error {
  using Error::Error;
};

struct DegenerateDirectionError : Error {
  using Error::Error;
};

struct DegenerateSupportError : Error {
  using Error::Error;
};

struct EnvelopeError : Error {
  using Error::Error;
};

struct CapabilityError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace gmh
