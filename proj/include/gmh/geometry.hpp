#pragma once

#include <mutex>
#include <optional>
#include <vector>

#include "gmh/affinity.hpp"
#include "gmh/density.hpp"
#include "gmh/quadrature.hpp"
#include "gmh/rng.hpp"
#include "gmh/types.hpp"

namespace gmh {

/// log of the residual density h(y) = (sqrt(g) - a*sqrt(f))^2 / (1 - a^2),
/// evaluated from the log densities. Stable for very small f, g.
double residual_log_pdf(double log_f, double log_g, double affinity);

/// Rejection envelope constant M = (1 + cos^2 theta) / sin^2 theta for the
/// mixture envelope u = (g + cos^2 theta * f) / (1 + cos^2 theta).
double residual_envelope_bound(const Affinity& aff);

/// The residual direction density h as a Density. Requires aff.value strictly
/// below the degeneracy threshold; h is undefined as f and g coincide.
Density residual_density(const Density& f, const Density& g,
                         const Affinity& aff);

struct ResidualDraw {
  Vector point;
  long attempts = 0;
};

/// Draw from h by rejection from the mixture envelope. Throws EnvelopeError
/// if `max_attempts` draws are all rejected.
ResidualDraw sample_residual(const Density& f, const Density& g,
                             const Affinity& aff, Rng& rng,
                             long max_attempts = 1000000);

/// Full three-term perturbed density at `y`: cos^2(eps*theta) f +
/// sin^2(eps*theta) h + sin(2 eps theta) sqrt(f) zeta. Returned as a plain
/// (non-log) value; it is the square of the rotated square-root point, so it
/// is exactly f at eps = 0 and exactly g at eps = 1.
double exact_perturbed_pdf(const Density& f, const Density& g,
                           const Affinity& aff, double eps, const Vector& y);

/// Directions toward which the base kernel is perturbed, with selection
/// probabilities.
struct DirectionSet {
  std::vector<Density> directions;
  Vector weights;

  static DirectionSet single(Density g);
  void validate() const;
  int size() const { return static_cast<int>(directions.size()); }
};

/// How per-state affinities are obtained when the (f, g_i) pair is not
/// Gaussian-Gaussian (Gaussian pairs always take the closed form).
struct AffinityConfig {
  AffinityMethod fallback = AffinityMethod::Quadrature;
  std::optional<Grid> fixed_grid;  // used for state-free 1-D quadrature
  double window_half_width = 40.0;  // state-centered window otherwise
  int window_points = 4001;
  long mc_samples = 1000;
  bool memoize = true;
};

/// The eps-perturbed mixture proposal phi_eps(.|x): for each direction g_i,
/// a two-component mixture of the base density f(.|x) and the residual
/// density h_i with weights cos^2(eps*theta_i) / sin^2(eps*theta_i).
///
/// Immutable after construction apart from the affinity memo, which is
/// lock-guarded, so one instance may serve concurrent chains.
class GeometricProposal {
 public:
  GeometricProposal(ConditionalDensity base, DirectionSet directions,
                    double epsilon, AffinityConfig affinity = {});
  GeometricProposal(const GeometricProposal& other);
  GeometricProposal& operator=(const GeometricProposal& other);

  /// Everything phi_eps needs at one conditioning state.
  struct Eval {
    Vector state;
    Density base;
    std::vector<Affinity> affinities;
  };

  Eval at(const Vector& x, Rng& rng) const;

  double log_pdf(const Eval& ev, const Vector& y) const;
  double log_pdf_direction(const Eval& ev, int i, const Vector& y) const;

  Vector sample(const Eval& ev, Rng& rng, int* direction = nullptr,
                bool* used_residual = nullptr) const;
  Vector sample_direction(const Eval& ev, int i, Rng& rng,
                          bool* used_residual = nullptr) const;

  double epsilon() const { return epsilon_; }
  const DirectionSet& directions() const { return directions_; }
  const ConditionalDensity& base() const { return base_; }
  bool state_free() const;

 private:
  Affinity compute_affinity(const Density& f, const Density& g,
                            const Vector& state, Rng& rng) const;

  ConditionalDensity base_;
  DirectionSet directions_;
  double epsilon_;
  AffinityConfig affinity_;
  mutable std::mutex cache_mutex_;
  mutable std::vector<Affinity> state_free_affinities_;
  mutable std::vector<std::pair<Vector, std::vector<Affinity>>> memo_;
};

}  // namespace gmh
