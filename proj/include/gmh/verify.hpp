#pragma once

#include <string>
#include <vector>

#include "gmh/ordering.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// A finite-state comparison fixture: base proposal rows, direction pmf rows,
/// mixing weights and step size, plus the target pmf.
struct OrderingFixture {
  std::string name;
  Matrix f_rows;
  std::vector<Matrix> g_rows;
  Vector weights;
  double eps = 0.5;
  Vector psi;
  bool independent_base = false;
};

/// Deterministic shipped fixtures (ten pairs, sizes 10..28 states).
std::vector<OrderingFixture> default_ordering_fixtures();

struct VerifyCheck {
  std::string fixture;
  std::string check;
  bool pass = false;
  double value = 0.0;  // measured quantity (slack, gap, ...)
};

struct VerifySuite {
  std::vector<VerifyCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Run every ordering check on the fixtures. With `corrupt` set, one
/// transition matrix is doctored first; the suite must then fail, naming the
/// violated inequality.
VerifySuite run_ordering_verification(
    const std::vector<OrderingFixture>& fixtures, int trials = 100,
    bool corrupt = false);

}  // namespace gmh
