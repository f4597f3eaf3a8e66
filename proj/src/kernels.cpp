#include "gmh/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <utility>

namespace gmh {

ConditionalDensity random_walk_family(const Matrix& cov) {
  ConditionalDensity fam;
  fam.state_free = false;
  fam.at = [cov](const Vector& x) { return mvnormal_density(x, cov); };
  return fam;
}

ConditionalDensity independent_family(Density proposal) {
  return ConditionalDensity::fixed(std::move(proposal));
}

ConditionalDensity mala_family(const TargetModel& target, double h) {
  if (!target.has_gradient())
    throw CapabilityError("mala_family: target lacks a gradient");
  if (!(h > 0.0)) throw Error("mala_family: step size must be positive");
  auto grad = target.gradient;
  const int d = target.dim;
  ConditionalDensity fam;
  fam.state_free = false;
  fam.at = [grad, h, d](const Vector& x) {
    const Vector mean = x + 0.5 * h * grad(x);
    return mvnormal_density(mean, h * Matrix::Identity(d, d));
  };
  return fam;
}

namespace {

Matrix repair_spd(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  Vector ev = es.eigenvalues();
  const double floor = 1e-6 * ev.maxCoeff();
  if (!(floor > 0.0))
    throw IllConditionedError("mmala: metric has no positive curvature");
  bool repaired = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor) {
      ev(i) = floor;
      repaired = true;
    }
  }
  if (!repaired) return g;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

ConditionalDensity mmala_family(const TargetModel& target, double h) {
  if (!target.has_gradient() || !target.has_hessian())
    throw CapabilityError("mmala_family: target lacks gradient or hessian");
  if (!(h > 0.0)) throw Error("mmala_family: step size must be positive");
  auto grad = target.gradient;
  auto hess = target.hessian;
  ConditionalDensity fam;
  fam.state_free = false;
  fam.at = [grad, hess, h](const Vector& x) {
    const Matrix metric = repair_spd(-hess(x));
    const Matrix cov = h * metric.llt().solve(
        Matrix::Identity(metric.rows(), metric.cols()));
    const Vector mean = x + 0.5 * metric.llt().solve(h * grad(x));
    return mvnormal_density(mean, 0.5 * (cov + cov.transpose()));
  };
  return fam;
}

FamilyKernel::FamilyKernel(ConditionalDensity family, KernelKind kind,
                           bool symmetric)
    : family_(std::move(family)), kind_(kind), symmetric_(symmetric) {}

Proposal FamilyKernel::propose(const Vector& x, Rng& rng) {
  const Density fx = family_.at(x);
  Proposal p;
  p.candidate = fx.draw(rng);
  p.log_fwd = fx.log_pdf(p.candidate);
  p.log_rev = family_.state_free ? fx.log_pdf(x)
                                 : family_.at(p.candidate).log_pdf(x);
  return p;
}

double FamilyKernel::log_pdf(const Vector& x, const Vector& y, Rng&) {
  return family_.at(x).log_pdf(y);
}

GeometricKernel::GeometricKernel(GeometricProposal proposal)
    : proposal_(std::move(proposal)) {}

Proposal GeometricKernel::propose(const Vector& x, Rng& rng) {
  const auto ex = proposal_.at(x, rng);
  Proposal p;
  p.candidate = proposal_.sample(ex, rng, &p.direction);
  p.log_fwd = proposal_.log_pdf(ex, p.candidate);
  const auto ey = proposal_.at(p.candidate, rng);
  p.log_rev = proposal_.log_pdf(ey, x);
  return p;
}

Proposal GeometricKernel::propose_single_direction(const Vector& x, Rng& rng) {
  const auto ex = proposal_.at(x, rng);
  const Vector& w = proposal_.directions().weights;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int i = 0;
  double u = unif(rng), cum = 0.0;
  for (; i + 1 < w.size(); ++i) {
    cum += w(i);
    if (u < cum) break;
  }
  Proposal p;
  p.direction = i;
  p.candidate = proposal_.sample_direction(ex, i, rng);
  p.log_fwd = proposal_.log_pdf_direction(ex, i, p.candidate);
  const auto ey = proposal_.at(p.candidate, rng);
  p.log_rev = proposal_.log_pdf_direction(ey, i, x);
  return p;
}

double GeometricKernel::log_pdf(const Vector& x, const Vector& y, Rng& rng) {
  return proposal_.log_pdf(proposal_.at(x, rng), y);
}

std::unique_ptr<ProposalKernel> make_base_kernel(KernelKind kind,
                                                 const BaseKernelParams& params,
                                                 const TargetModel& target) {
  switch (kind) {
    case KernelKind::RandomWalk:
      return std::make_unique<FamilyKernel>(random_walk_family(params.cov),
                                            kind, true);
    case KernelKind::Independent:
      return std::make_unique<FamilyKernel>(independent_family(params.proposal),
                                            kind, false);
    case KernelKind::Mala:
      return std::make_unique<FamilyKernel>(mala_family(target, params.h),
                                            kind, false);
    case KernelKind::Mmala:
      return std::make_unique<FamilyKernel>(mmala_family(target, params.h),
                                            kind, false);
    default:
      throw ConfigError("make_base_kernel: unsupported kind");
  }
}

namespace {

StepResult accept_reject(const TargetModel& target, const Vector& x,
                         const Proposal& p, Rng& rng) {
  StepResult r;
  r.direction = p.direction;
  const double lp_y = target.log_density(p.candidate);
  if (!std::isfinite(lp_y)) {
    r.next = x;
    r.accepted = false;
    r.log_alpha = kNegInf;
    return r;
  }
  const double lp_x = target.log_density(x);
  r.log_alpha = lp_y + p.log_rev - lp_x - p.log_fwd;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (!std::isfinite(lp_x) || std::log(unif(rng)) < std::min(0.0, r.log_alpha)) {
    r.next = p.candidate;
    r.accepted = true;
  } else {
    r.next = x;
    r.accepted = false;
  }
  return r;
}

}  // namespace

StepResult mh_step(const TargetModel& target, ProposalKernel& kernel,
                   const Vector& x, Rng& rng) {
  return accept_reject(target, x, kernel.propose(x, rng), rng);
}

StepResult mixture_kernel_step(const TargetModel& target,
                               GeometricKernel& kernel, const Vector& x,
                               Rng& rng) {
  return accept_reject(target, x, kernel.propose_single_direction(x, rng), rng);
}

StepFn make_mh_step(const TargetModel& target,
                    std::shared_ptr<ProposalKernel> kernel) {
  return [target, kernel](const Vector& x, Rng& rng) {
    return mh_step(target, *kernel, x, rng);
  };
}

StepFn make_mixture_step(const TargetModel& target,
                         std::shared_ptr<GeometricKernel> kernel) {
  return [target, kernel](const Vector& x, Rng& rng) {
    return mixture_kernel_step(target, *kernel, x, rng);
  };
}

ChainTrace run_chain(const StepFn& step, const Vector& init, long n,
                     std::uint64_t seed) {
  if (n < 1) throw Error("run_chain: need n >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = make_rng(seed);
  ChainTrace trace;
  trace.seed = seed;
  trace.states = Matrix(n, init.size());
  trace.accepted.reserve(static_cast<size_t>(n));
  trace.direction.reserve(static_cast<size_t>(n));
  trace.log_alpha.reserve(static_cast<size_t>(n));
  Vector x = init;
  for (long i = 0; i < n; ++i) {
    try {
      StepResult r = step(x, rng);
      x = r.next;
      trace.states.row(i) = x.transpose();
      trace.accepted.push_back(r.accepted ? 1 : 0);
      trace.direction.push_back(r.direction);
      trace.log_alpha.push_back(r.log_alpha);
    } catch (const std::exception& e) {
      trace.states.conservativeResize(i, Eigen::NoChange);
      trace.error = e.what();
      break;
    }
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return trace;
}

TargetModel conditional_target(const TargetModel& full,
                               const std::vector<int>& coords,
                               const Vector& anchor) {
  TargetModel cond;
  cond.dim = static_cast<int>(coords.size());
  Vector lo(coords.size()), hi(coords.size());
  for (size_t k = 0; k < coords.size(); ++k) {
    lo(static_cast<Eigen::Index>(k)) = full.support.lo(coords[k]);
    hi(static_cast<Eigen::Index>(k)) = full.support.hi(coords[k]);
  }
  cond.support = Box::bounded(lo, hi);
  auto log_density = full.log_density;
  cond.log_density = [log_density, coords, anchor](const Vector& u) {
    Vector x = anchor;
    for (size_t k = 0; k < coords.size(); ++k)
      x(coords[k]) = u(static_cast<Eigen::Index>(k));
    return log_density(x);
  };
  return cond;
}

StepFn gibbs_compose(const TargetModel& target, std::vector<GibbsBlock> blocks) {
  std::vector<bool> seen(static_cast<size_t>(target.dim), false);
  for (const auto& b : blocks) {
    for (int c : b.coords) {
      if (c < 0 || c >= target.dim || seen[static_cast<size_t>(c)])
        throw Error("gibbs_compose: blocks must partition the coordinates");
      seen[static_cast<size_t>(c)] = true;
    }
  }
  for (bool s : seen)
    if (!s) throw Error("gibbs_compose: blocks must partition the coordinates");

  return [target, blocks = std::move(blocks)](const Vector& x, Rng& rng) {
    StepResult scan;
    scan.next = x;
    scan.accepted = false;
    scan.log_alpha = 0.0;
    for (const auto& block : blocks) {
      const TargetModel cond =
          conditional_target(target, block.coords, scan.next);
      Vector sub(block.coords.size());
      for (size_t k = 0; k < block.coords.size(); ++k)
        sub(static_cast<Eigen::Index>(k)) = scan.next(block.coords[k]);
      const StepResult r = block.step(cond, sub, rng);
      for (size_t k = 0; k < block.coords.size(); ++k)
        scan.next(block.coords[k]) = r.next(static_cast<Eigen::Index>(k));
      scan.accepted = scan.accepted || r.accepted;
      scan.log_alpha += std::isfinite(r.log_alpha) ? r.log_alpha : 0.0;
    }
    return scan;
  };
}

GibbsBlock rw_gibbs_block(int coord, double rw_sd) {
  GibbsBlock b;
  b.coords = {coord};
  const Matrix cov = Matrix::Constant(1, 1, rw_sd * rw_sd);
  b.step = [cov](const TargetModel& cond, const Vector& sub, Rng& rng) {
    FamilyKernel k(random_walk_family(cov), KernelKind::RandomWalk, true);
    return mh_step(cond, k, sub, rng);
  };
  return b;
}

GibbsBlock geometric_rw_gibbs_block(int coord, double rw_sd, Density g,
                                    double eps) {
  GibbsBlock b;
  b.coords = {coord};
  const Matrix cov = Matrix::Constant(1, 1, rw_sd * rw_sd);
  b.step = [cov, g = std::move(g), eps](const TargetModel& cond,
                                        const Vector& sub, Rng& rng) {
    GeometricKernel k(GeometricProposal(random_walk_family(cov),
                                        DirectionSet::single(g), eps));
    return mh_step(cond, k, sub, rng);
  };
  return b;
}

}  // namespace gmh
