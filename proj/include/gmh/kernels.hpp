#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gmh/density.hpp"
#include "gmh/geometry.hpp"
#include "gmh/rng.hpp"
#include "gmh/targets.hpp"
#include "gmh/trace.hpp"
#include "gmh/types.hpp"

namespace gmh {

enum class KernelKind { RandomWalk, Independent, Mala, Mmala, Geometric, Custom };

// ---- conditional density families for the base kernels --------------------

ConditionalDensity random_walk_family(const Matrix& cov);
ConditionalDensity independent_family(Density proposal);
/// Langevin proposal N(x + (h/2) grad log psi(x), h I).
ConditionalDensity mala_family(const TargetModel& target, double h);
/// Simplified manifold variant: N(x + (h/2) G(x)^-1 grad, h G(x)^-1) with
/// G = -hessian, eigenvalue-floored when indefinite.
ConditionalDensity mmala_family(const TargetModel& target, double h);

// ---- proposal kernels ------------------------------------------------------

struct Proposal {
  Vector candidate;
  double log_fwd = 0.0;  // log q(candidate | current)
  double log_rev = 0.0;  // log q(current | candidate)
  int direction = -1;
};

class ProposalKernel {
 public:
  virtual ~ProposalKernel() = default;
  virtual KernelKind kind() const = 0;
  virtual Proposal propose(const Vector& x, Rng& rng) = 0;
  virtual double log_pdf(const Vector& x, const Vector& y, Rng& rng) = 0;
  virtual bool symmetric() const { return false; }
};

/// MH kernel backed by a conditional density family.
class FamilyKernel : public ProposalKernel {
 public:
  FamilyKernel(ConditionalDensity family, KernelKind kind, bool symmetric);
  KernelKind kind() const override { return kind_; }
  Proposal propose(const Vector& x, Rng& rng) override;
  double log_pdf(const Vector& x, const Vector& y, Rng& rng) override;
  bool symmetric() const override { return symmetric_; }
  const ConditionalDensity& family() const { return family_; }

 private:
  ConditionalDensity family_;
  KernelKind kind_;
  bool symmetric_;
};

/// The geometric proposal as an MH kernel (the full mixture over directions).
class GeometricKernel : public ProposalKernel {
 public:
  explicit GeometricKernel(GeometricProposal proposal);
  KernelKind kind() const override { return KernelKind::Geometric; }
  Proposal propose(const Vector& x, Rng& rng) override;
  double log_pdf(const Vector& x, const Vector& y, Rng& rng) override;
  const GeometricProposal& proposal() const { return proposal_; }

  /// Single-direction move: draw i from the direction weights, propose from
  /// phi_{i,eps} and report densities of that component only.
  Proposal propose_single_direction(const Vector& x, Rng& rng);

 private:
  GeometricProposal proposal_;
};

struct BaseKernelParams {
  Matrix cov;          // random walk
  Density proposal;    // independent
  double h = 0.1;      // mala / mmala
};

std::unique_ptr<ProposalKernel> make_base_kernel(KernelKind kind,
                                                 const BaseKernelParams& params,
                                                 const TargetModel& target);

// ---- MH steps and chains ----------------------------------------------------

struct StepResult {
  Vector next;
  bool accepted = false;
  double log_alpha = 0.0;
  int direction = -1;
};

/// One MH transition. Candidates with non-finite target log-density are
/// rejected outright.
StepResult mh_step(const TargetModel& target, ProposalKernel& kernel,
                   const Vector& x, Rng& rng);

/// One transition of the mixture-of-kernels variant: acceptance uses only the
/// sampled direction's component density.
StepResult mixture_kernel_step(const TargetModel& target,
                               GeometricKernel& kernel, const Vector& x,
                               Rng& rng);

using StepFn = std::function<StepResult(const Vector&, Rng&)>;

StepFn make_mh_step(const TargetModel& target,
                    std::shared_ptr<ProposalKernel> kernel);
StepFn make_mixture_step(const TargetModel& target,
                         std::shared_ptr<GeometricKernel> kernel);

ChainTrace run_chain(const StepFn& step, const Vector& init, long n,
                     std::uint64_t seed);

// ---- within-Gibbs composition -----------------------------------------------

/// Restriction of `full` to the block coordinates, everything else pinned at
/// `anchor`.
TargetModel conditional_target(const TargetModel& full,
                               const std::vector<int>& coords,
                               const Vector& anchor);

struct GibbsBlock {
  std::vector<int> coords;
  /// One MH update of the block given its conditional target.
  std::function<StepResult(const TargetModel& cond, const Vector& sub, Rng&)>
      step;
};

/// Deterministic-scan composition in declared block order. The blocks must
/// partition the coordinates. The composite result counts a scan as accepted
/// when any block moved.
StepFn gibbs_compose(const TargetModel& target, std::vector<GibbsBlock> blocks);

/// Random-walk block update with proposal sd `rw_sd` on one coordinate.
GibbsBlock rw_gibbs_block(int coord, double rw_sd);

/// Geometric random-walk block update: base N(x, rw_sd^2) perturbed toward
/// `g` with step `eps`.
GibbsBlock geometric_rw_gibbs_block(int coord, double rw_sd, Density g,
                                    double eps);

}  // namespace gmh
