#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmh/types.hpp"

namespace gmh {

/// A seeded sample path with its acceptance log. `direction` holds the
/// chosen perturbation direction for mixture-of-kernels moves (-1 otherwise).
struct ChainTrace {
  Matrix states;  // n x d
  std::vector<std::uint8_t> accepted;
  std::vector<int> direction;
  std::vector<double> log_alpha;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::string error;  // non-empty when the run aborted early

  long size() const { return static_cast<long>(states.rows()); }
  int dim() const { return static_cast<int>(states.cols()); }

  double acceptance_rate() const {
    if (accepted.empty()) return 0.0;
    double s = 0.0;
    for (auto a : accepted) s += a;
    return s / static_cast<double>(accepted.size());
  }
};

}  // namespace gmh
