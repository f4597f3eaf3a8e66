#include "gmh/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gmh {

namespace {

// log(1 - exp(-d)) for d > 0
double log1mexp(double d) {
  if (d <= 0.0) return kNegInf;
  return d > 0.6931471805599453 ? std::log1p(-std::exp(-d))
                                : std::log(-std::expm1(-d));
}

double logsumexp2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void check_residual_ok(const Affinity& aff) {
  if (aff.degenerate())
    throw DegenerateDirectionError(
        "residual density undefined: directions nearly coincide");
}

}  // namespace

double residual_log_pdf(double log_f, double log_g, double affinity) {
  // 2*log| exp(lg/2) - a*exp(lf/2) | - log(1 - a^2)
  const double u = 0.5 * log_g;
  const double v = 0.5 * log_f + std::log(affinity);
  double log_abs_diff;
  if (u == kNegInf && v == kNegInf) return kNegInf;
  if (u == v) return kNegInf;
  const double m = std::max(u, v);
  log_abs_diff = m + log1mexp(std::abs(u - v));
  return 2.0 * log_abs_diff - std::log1p(-affinity * affinity);
}

double residual_envelope_bound(const Affinity& aff) {
  check_residual_ok(aff);
  const double c2 = aff.value * aff.value;
  return (1.0 + c2) / (1.0 - c2);
}

Density residual_density(const Density& f, const Density& g,
                         const Affinity& aff) {
  check_residual_ok(aff);
  if (f.dim != g.dim)
    throw DimensionError("residual_density: dimension mismatch");
  Density h;
  h.dim = f.dim;
  h.normalized = f.normalized && g.normalized;
  h.support = g.support;
  const double a = aff.value;
  auto f_log = f.log_pdf;
  auto g_log = g.log_pdf;
  h.log_pdf = [f_log, g_log, a](const Vector& y) {
    return residual_log_pdf(f_log(y), g_log(y), a);
  };
  if (f.samplable() && g.samplable()) {
    Affinity acopy = aff;
    Density fcopy = f, gcopy = g;
    h.draw = [fcopy, gcopy, acopy](Rng& rng) {
      return sample_residual(fcopy, gcopy, acopy, rng).point;
    };
  }
  return h;
}

ResidualDraw sample_residual(const Density& f, const Density& g,
                             const Affinity& aff, Rng& rng,
                             long max_attempts) {
  check_residual_ok(aff);
  if (!f.samplable() || !g.samplable())
    throw CapabilityError("sample_residual: f and g must both be samplable");
  const double a = aff.value;
  const double c2 = a * a;
  const double log_c2 = 2.0 * std::log(a);
  const double log_m = std::log1p(c2) - std::log1p(-c2);
  const double log_norm_u = std::log1p(c2);
  const double p_g = 1.0 / (1.0 + c2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  ResidualDraw out;
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    const Vector y = (unif(rng) < p_g) ? g.draw(rng) : f.draw(rng);
    const double lf = f.log_pdf(y);
    const double lg = g.log_pdf(y);
    const double log_h = residual_log_pdf(lf, lg, a);
    const double log_u = logsumexp2(lg, log_c2 + lf) - log_norm_u;
    const double log_accept = log_h - log_m - log_u;
    if (std::log(unif(rng)) < log_accept) {
      out.point = y;
      out.attempts = attempt;
      return out;
    }
  }
  throw EnvelopeError("sample_residual: attempt cap exceeded");
}

double exact_perturbed_pdf(const Density& f, const Density& g,
                           const Affinity& aff, double eps, const Vector& y) {
  check_residual_ok(aff);
  if (eps < 0.0 || eps > 1.0)
    throw Error("exact_perturbed_pdf: eps outside [0, 1]");
  const double a = aff.value;
  const double theta = aff.angle;
  const double sf = std::exp(0.5 * f.log_pdf(y));
  const double sg = std::exp(0.5 * g.log_pdf(y));
  const double zeta = (sg - a * sf) / std::sqrt(1.0 - a * a);
  const double rho = std::cos(eps * theta) * sf + std::sin(eps * theta) * zeta;
  return rho * rho;
}

DirectionSet DirectionSet::single(Density g) {
  DirectionSet d;
  d.directions.push_back(std::move(g));
  d.weights = Vector::Ones(1);
  return d;
}

void DirectionSet::validate() const {
  if (directions.empty()) throw Error("DirectionSet: need at least one direction");
  if (weights.size() != static_cast<Eigen::Index>(directions.size()))
    throw DimensionError("DirectionSet: weights/directions size mismatch");
  if ((weights.array() < 0.0).any() ||
      std::abs(weights.sum() - 1.0) > 1e-12)
    throw Error("DirectionSet: weights must be a probability vector");
}

GeometricProposal::GeometricProposal(ConditionalDensity base,
                                     DirectionSet directions, double epsilon,
                                     AffinityConfig affinity)
    : base_(std::move(base)),
      directions_(std::move(directions)),
      epsilon_(epsilon),
      affinity_(affinity) {
  directions_.validate();
  if (epsilon_ < 0.0 || epsilon_ > 1.0)
    throw Error("GeometricProposal: epsilon outside [0, 1]");
}

GeometricProposal::GeometricProposal(const GeometricProposal& other)
    : base_(other.base_),
      directions_(other.directions_),
      epsilon_(other.epsilon_),
      affinity_(other.affinity_) {
  std::lock_guard<std::mutex> lock(other.cache_mutex_);
  state_free_affinities_ = other.state_free_affinities_;
  memo_ = other.memo_;
}

GeometricProposal& GeometricProposal::operator=(const GeometricProposal& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(cache_mutex_, other.cache_mutex_);
  base_ = other.base_;
  directions_ = other.directions_;
  epsilon_ = other.epsilon_;
  affinity_ = other.affinity_;
  state_free_affinities_ = other.state_free_affinities_;
  memo_ = other.memo_;
  return *this;
}

bool GeometricProposal::state_free() const { return base_.state_free; }

namespace {

// affinity over a window centered on the base density: the integrand
// sqrt(f g) must be covered (f localized), but g alone may be heavy-tailed
// and is not required to live inside the window
Affinity windowed_affinity(const Density& f, const Density& g,
                           const Grid& grid) {
  const int n = grid.size();
  Vector fv(n), prod(n);
  for (int i = 0; i < n; ++i) {
    const Vector x = vec1(grid.points(i));
    fv(i) = std::exp(f.log_pdf(x));
    prod(i) = std::sqrt(fv(i) * std::exp(g.log_pdf(x)));
  }
  if (integrate_with_tails(grid, fv) < 1.0 - 1e-6)
    throw CoverageError("windowed affinity: window misses base mass");
  const double peak = prod.maxCoeff();
  if (std::max(prod(0), prod(n - 1)) > 1e-10 * peak)
    throw CoverageError("windowed affinity: integrand not decayed at edges");
  const double val = integrate_with_tails(grid, prod);
  return make_affinity(std::min(val, 1.0), AffinityMethod::Quadrature);
}

}  // namespace

Affinity GeometricProposal::compute_affinity(const Density& f,
                                             const Density& g,
                                             const Vector& state,
                                             Rng& rng) const {
  if (f.gaussian && g.gaussian)
    return gaussian_affinity(*f.gaussian, *g.gaussian);
  if (affinity_.fallback == AffinityMethod::MonteCarlo)
    return importance_affinity(f, g, affinity_.mc_samples, rng);
  if (f.dim != 1)
    throw CapabilityError(
        "GeometricProposal: quadrature affinity only covers 1-D densities; "
        "use Monte Carlo for this pair");
  if (affinity_.fixed_grid) return quadrature_affinity(f, g, *affinity_.fixed_grid);
  const double c = state.size() == 1 ? state(0) : 0.0;
  Grid grid = Grid::uniform(c - affinity_.window_half_width,
                            c + affinity_.window_half_width,
                            affinity_.window_points);
  grid.tail_correct = true;
  return windowed_affinity(f, g, grid);
}

GeometricProposal::Eval GeometricProposal::at(const Vector& x,
                                              Rng& rng) const {
  Eval ev;
  ev.state = x;
  ev.base = base_.at(x);
  if (base_.state_free) {
    // independent base: angles do not move with the state
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      if (!state_free_affinities_.empty()) {
        ev.affinities = state_free_affinities_;
        return ev;
      }
    }
    std::vector<Affinity> affs;
    for (const Density& g : directions_.directions)
      affs.push_back(compute_affinity(ev.base, g, x, rng));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (state_free_affinities_.empty()) state_free_affinities_ = affs;
    ev.affinities = state_free_affinities_;
    return ev;
  }
  if (affinity_.memoize) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    for (const auto& [key, affs] : memo_) {
      if (key.size() == x.size() && key == x) {
        ev.affinities = affs;
        return ev;
      }
    }
  }
  ev.affinities.reserve(directions_.size());
  for (const Density& g : directions_.directions)
    ev.affinities.push_back(compute_affinity(ev.base, g, x, rng));
  if (affinity_.memoize) {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (memo_.size() >= 16) memo_.erase(memo_.begin());
    memo_.emplace_back(x, ev.affinities);
  }
  return ev;
}

double GeometricProposal::log_pdf_direction(const Eval& ev, int i,
                                            const Vector& y) const {
  const double lf = ev.base.log_pdf(y);
  const Affinity& aff = ev.affinities[static_cast<size_t>(i)];
  if (aff.degenerate()) return lf;  // the perturbation degenerates to f
  const double arg = epsilon_ * aff.angle;
  const double c = std::cos(arg), s = std::sin(arg);
  const double lh =
      residual_log_pdf(lf, directions_.directions[static_cast<size_t>(i)].log_pdf(y),
                       aff.value);
  return logsumexp2(2.0 * std::log(c) + lf, 2.0 * std::log(s) + lh);
}

double GeometricProposal::log_pdf(const Eval& ev, const Vector& y) const {
  double acc = kNegInf;
  for (int i = 0; i < directions_.size(); ++i) {
    const double w = directions_.weights(i);
    if (w <= 0.0) continue;
    acc = logsumexp2(acc, std::log(w) + log_pdf_direction(ev, i, y));
  }
  return acc;
}

Vector GeometricProposal::sample_direction(const Eval& ev, int i, Rng& rng,
                                           bool* used_residual) const {
  const Affinity& aff = ev.affinities[static_cast<size_t>(i)];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double arg = epsilon_ * aff.angle;
  const double w_base = std::cos(arg) * std::cos(arg);
  if (aff.degenerate() || unif(rng) < w_base) {
    if (used_residual) *used_residual = false;
    return ev.base.draw(rng);
  }
  if (used_residual) *used_residual = true;
  return sample_residual(ev.base, directions_.directions[static_cast<size_t>(i)],
                         aff, rng)
      .point;
}

Vector GeometricProposal::sample(const Eval& ev, Rng& rng, int* direction,
                                 bool* used_residual) const {
  int i = 0;
  if (directions_.size() > 1) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng), cum = 0.0;
    for (; i + 1 < directions_.size(); ++i) {
      cum += directions_.weights(i);
      if (u < cum) break;
    }
  }
  if (direction) *direction = i;
  return sample_direction(ev, i, rng, used_residual);
}

}  // namespace gmh
