#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gmh/affinity.hpp"
#include "gmh/rng.hpp"
#include "gmh/types.hpp"

namespace gmh::varsel {

/// A model: strictly increasing 0-based column indices into the design.
struct Model {
  std::vector<int> idx;

  int size() const { return static_cast<int>(idx.size()); }
  bool contains(int j) const;
  bool operator==(const Model& other) const { return idx == other.idx; }
  std::string to_string() const;  // 1-based, space separated
};

/// Standardized design and centered response with the prior hyperparameters.
/// Columns are centered and scaled to unit sample standard deviation; the
/// design may be held dense or as sparse binary marker columns.
class VSData {
 public:
  static VSData from_dense(Matrix W_raw, Vector z, double lambda, double omega);
  /// Sparse 0/1 design given per-column row indices of the ones.
  static VSData from_sparse_binary(std::vector<std::vector<int>> one_rows,
                                   long m, Vector z, double lambda,
                                   double omega);

  long rows() const { return m_; }
  long cols() const { return p_; }
  double lambda() const { return lambda_; }
  double omega() const { return omega_; }

  /// Standardized column j (materialized).
  Vector column(int j) const;
  const Vector& ztilde() const { return ztilde_; }
  double zz() const { return zz_; }
  double zbar() const { return zbar_; }
  /// W^T ztilde (precomputed).
  const Vector& bz() const { return bz_; }
  /// Squared norm of every standardized column (== m - 1).
  double col_sqnorm() const { return static_cast<double>(m_ - 1); }
  /// w_j . v for a length-m vector without materializing the column.
  double col_dot(int j, const Vector& v) const;

  bool sparse() const { return !one_rows_.empty(); }

 private:
  void finalize(const Vector& z);

  long m_ = 0, p_ = 0;
  double lambda_ = 0.0, omega_ = 0.0;
  Matrix dense_;                            // empty when sparse
  std::vector<std::vector<int>> one_rows_;  // empty when dense
  Vector col_mean_, col_sd_;
  Vector ztilde_, bz_;
  double zz_ = 0.0, zbar_ = 0.0;
};

// ---- default hyperparameters (omega = sqrt(m)/p, lambda = m/p^2) ------------

double default_omega(long m, long p);
double default_lambda(long m, long p);

// ---- incremental Cholesky state ---------------------------------------------

/// Upper-triangular factor R with R^T R = W_gamma^T W_gamma + lambda I,
/// plus q = R^-T W_gamma^T ztilde, the ridge residual and log-determinant,
/// and the cross-product rows V = W_gamma^T W (the per-neighborhood cache).
struct CholState {
  Model model;
  std::vector<int> order;  // factor column order (insertion order)
  Matrix R;
  Vector q;
  Matrix V;  // |gamma| x p, rows follow `order`
  double rss = 0.0;
  double logdet = 0.0;

  void check_invariants(const VSData& data, double tol = 1e-8) const;
};

CholState chol_init(const VSData& data, const Model& model);

struct MoveCounters {
  long candidates = 0;
  long work_units = 0;  // inner-loop elements touched beyond shared work
  void reset() { candidates = work_units = 0; }
};

/// Moves within the neighborhood of a model.
enum class MoveKind { Add, Delete, Swap };
struct Move {
  MoveKind kind;
  int j_add = -1;  // entering column (Add, Swap)
  int j_del = -1;  // leaving column (Delete, Swap)
};

Model apply_move(const Model& gamma, const Move& move);

/// Streaming enumeration of N(gamma) = additions, deletions, swaps.
void for_each_neighbor(const Model& gamma, long p,
                       const std::function<void(const Move&)>& fn);
long neighborhood_size(const Model& gamma, long p);

/// Apply a move to the factor in place; never refactorizes on the hot path.
/// Falls back to a fresh factorization (and logs through `refactored`) only
/// if positive definiteness is lost numerically.
void chol_update(CholState& state, const Move& move, const VSData& data,
                 bool* refactored = nullptr);

/// Eq.-style log marginal pmf value, up to the model-independent constant:
/// (|g|/2) log lambda - 1/2 log|A| - (m-1)/2 log R + |g| log w +
/// (p-|g|) log(1-w).
double log_marginal(const VSData& data, const CholState& state);

// ---- neighborhood scoring -----------------------------------------------------

/// Scores of every model in N(gamma). Arrays are aligned with `moves`.
struct NeighborhoodScores {
  std::vector<Move> moves;
  Vector log_post;           // log psi(gamma'|z) up to the global constant
  double log_post_current = 0.0;
  long n_add = 0, n_del = 0, n_swap = 0;
};

/// Score every neighbor in O(|gamma|^2 + m) per candidate beyond shared
/// work; `counters`, when given, accumulates the per-candidate unit count.
NeighborhoodScores score_neighborhood(const VSData& data,
                                      const CholState& state,
                                      MoveCounters* counters = nullptr);

// ---- proposal pmfs over the neighborhood ---------------------------------------

/// Random-walk proposal weights. `symmetric` uses the balanced form
/// b+ = (p-|g|)/2p, b- = |g|/2p, b0 = 1/2; otherwise the fixed asymmetric
/// constants. Empty move classes have their mass redistributed
/// proportionally over the nonempty ones.
struct RwWeights {
  bool symmetric = true;
  double b_add = 0.4, b_del = 0.4, b_swap = 0.2;
};

Vector rw_log_pmf(const RwWeights& w, const Model& gamma, long p,
                  const NeighborhoodScores& scores);

/// Locally informed pmf g over N(gamma): softmax of the neighborhood scores.
Vector informed_log_pmf(const NeighborhoodScores& scores);

/// Exact affinity between two pmfs on the same finite support.
Affinity neighborhood_affinity(const Vector& f_log_pmf,
                               const Vector& g_log_pmf);

/// Residual pmf h over N(gamma), exact by enumeration.
Vector residual_pmf(const Vector& f_log_pmf, const Vector& g_log_pmf,
                    const Affinity& aff);

// ---- sampler -----------------------------------------------------------------

struct VsState {
  Model model;
  CholState chol;
  NeighborhoodScores scores;
};

VsState vs_init(const VSData& data, const Model& start,
                MoveCounters* counters = nullptr);

struct VsStepResult {
  bool accepted = false;
  double log_alpha = 0.0;
};

/// One geometric MH transition on model space: base pmf f from `weights`,
/// informed direction g from the neighborhood scores, mixture step eps.
VsStepResult vs_geometric_step(const VSData& data, VsState& state, double eps,
                               const RwWeights& weights, Rng& rng,
                               MoveCounters* counters = nullptr);

/// Plain random-walk MH baseline on model space.
VsStepResult vs_rw_step(const VSData& data, VsState& state,
                        const RwWeights& weights, Rng& rng,
                        MoveCounters* counters = nullptr);

// ---- simulation designs ---------------------------------------------------------

enum class DesignKind {
  Independent,
  CompoundSymmetry,
  Autoregressive,
  FactorModel,
  ExtremeCorrelation
};

DesignKind design_from_string(const std::string& name);

struct SimulatedDesign {
  Matrix W;        // raw (unstandardized) design
  Vector z;
  Vector beta;
  Model true_model;
  double sigma2 = 0.0;
};

/// Draw a design of the given kind; the noise variance is solved from the
/// theoretical R^2 via sigma^2 = beta' Cov(W) beta (1 - R2) / R2 with the
/// design's population covariance.
SimulatedDesign simulate_design(DesignKind kind, long p, long m, double r2,
                                std::uint64_t seed);

// ---- posterior summaries ---------------------------------------------------------

struct VsSummaries {
  Vector mip;           // visit-frequency inclusion rates
  Vector weighted_mip;  // Eq.-weighted over unique visited models
  Model median_model;   // MIP > 0.5 (strict)
  Model wam_model;      // weighted MIP > 0.5 (strict)
  double r2_median = 0.0;
  double r2_wam = 0.0;
};

VsSummaries posterior_summaries(const std::vector<Model>& visited,
                                const std::vector<double>& log_post,
                                const VSData& data);

/// Least-squares R^2 of the plain regression on the model's columns.
double model_r2(const VSData& data, const Model& model);

// ---- sparse binary column file format --------------------------------------------

/// Compact sparse binary design format ("GMHS"): little-endian header
/// (magic, version, m, p), a column offset table, then per-column int32 row
/// indices of the ones.
void write_sparse_binary(const std::string& path,
                         const std::vector<std::vector<int>>& one_rows,
                         long m);
std::vector<std::vector<int>> read_sparse_binary(const std::string& path,
                                                 long* m_out);

}  // namespace gmh::varsel
