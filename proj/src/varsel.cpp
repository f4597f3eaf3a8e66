#include "gmh/varsel.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace gmh::varsel {

namespace {

double logsumexp(const Vector& v) {
  const double m = v.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((v.array() - m).exp().sum());
}

int rank_in(const std::vector<int>& sorted, int j) {
  return static_cast<int>(
      std::lower_bound(sorted.begin(), sorted.end(), j) - sorted.begin());
}

}  // namespace

bool Model::contains(int j) const {
  return std::binary_search(idx.begin(), idx.end(), j);
}

std::string Model::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ' ';
    os << idx[i] + 1;
  }
  return os.str();
}

// ---- VSData ----------------------------------------------------------------

VSData VSData::from_dense(Matrix W_raw, Vector z, double lambda, double omega) {
  VSData d;
  d.m_ = W_raw.rows();
  d.p_ = W_raw.cols();
  d.lambda_ = lambda;
  d.omega_ = omega;
  if (d.m_ < 3) throw Error("VSData: need at least 3 observations");
  if (!(lambda > 0.0) || !(omega > 0.0) || !(omega < 1.0))
    throw Error("VSData: need lambda > 0 and omega in (0, 1)");
  d.dense_ = std::move(W_raw);
  d.col_mean_ = d.dense_.colwise().mean();
  d.col_sd_ = Vector(d.p_);
  for (long j = 0; j < d.p_; ++j) {
    const double ss =
        (d.dense_.col(j).array() - d.col_mean_(j)).square().sum();
    d.col_sd_(j) = std::sqrt(ss / static_cast<double>(d.m_ - 1));
    if (!(d.col_sd_(j) > 0.0))
      throw Error("VSData: constant design column " + std::to_string(j + 1));
  }
  d.finalize(z);
  return d;
}

VSData VSData::from_sparse_binary(std::vector<std::vector<int>> one_rows,
                                  long m, Vector z, double lambda,
                                  double omega) {
  VSData d;
  d.m_ = m;
  d.p_ = static_cast<long>(one_rows.size());
  d.lambda_ = lambda;
  d.omega_ = omega;
  if (d.m_ < 3) throw Error("VSData: need at least 3 observations");
  if (!(lambda > 0.0) || !(omega > 0.0) || !(omega < 1.0))
    throw Error("VSData: need lambda > 0 and omega in (0, 1)");
  d.one_rows_ = std::move(one_rows);
  d.col_mean_ = Vector(d.p_);
  d.col_sd_ = Vector(d.p_);
  for (long j = 0; j < d.p_; ++j) {
    const auto& ones = d.one_rows_[static_cast<size_t>(j)];
    const double k = static_cast<double>(ones.size());
    const double mean = k / static_cast<double>(m);
    // sum of squared deviations of a 0/1 column
    const double ss = k * (1.0 - mean) * (1.0 - mean) +
                      (static_cast<double>(m) - k) * mean * mean;
    d.col_mean_(j) = mean;
    d.col_sd_(j) = std::sqrt(ss / static_cast<double>(m - 1));
    if (!(d.col_sd_(j) > 0.0))
      throw Error("VSData: constant marker column " + std::to_string(j + 1));
  }
  d.finalize(z);
  return d;
}

void VSData::finalize(const Vector& z) {
  if (z.size() != m_) throw DimensionError("VSData: response length mismatch");
  zbar_ = z.mean();
  ztilde_ = z.array() - zbar_;
  zz_ = ztilde_.squaredNorm();
  bz_ = Vector(p_);
  for (long j = 0; j < p_; ++j) bz_(j) = col_dot(static_cast<int>(j), ztilde_);
}

Vector VSData::column(int j) const {
  if (j < 0 || j >= p_) throw DimensionError("VSData::column: index");
  if (!sparse())
    return (dense_.col(j).array() - col_mean_(j)) / col_sd_(j);
  Vector col = Vector::Constant(m_, -col_mean_(j) / col_sd_(j));
  const double one_val = (1.0 - col_mean_(j)) / col_sd_(j);
  for (int i : one_rows_[static_cast<size_t>(j)]) col(i) = one_val;
  return col;
}

double VSData::col_dot(int j, const Vector& v) const {
  if (v.size() != m_) throw DimensionError("VSData::col_dot: length");
  if (!sparse())
    return (dense_.col(j).dot(v) - col_mean_(j) * v.sum()) / col_sd_(j);
  double s = 0.0;
  for (int i : one_rows_[static_cast<size_t>(j)]) s += v(i);
  return (s - col_mean_(j) * v.sum()) / col_sd_(j);
}

double default_omega(long m, long p) {
  return std::sqrt(static_cast<double>(m)) / static_cast<double>(p);
}

double default_lambda(long m, long p) {
  return static_cast<double>(m) / (static_cast<double>(p) * static_cast<double>(p));
}

// ---- moves -------------------------------------------------------------------

Model apply_move(const Model& gamma, const Move& move) {
  Model out = gamma;
  if (move.kind == MoveKind::Add || move.kind == MoveKind::Swap) {
    if (gamma.contains(move.j_add)) throw Error("apply_move: column present");
    out.idx.insert(
        std::lower_bound(out.idx.begin(), out.idx.end(), move.j_add),
        move.j_add);
  }
  if (move.kind == MoveKind::Delete || move.kind == MoveKind::Swap) {
    auto it = std::lower_bound(out.idx.begin(), out.idx.end(), move.j_del);
    if (it == out.idx.end() || *it != move.j_del)
      throw Error("apply_move: column absent");
    out.idx.erase(it);
  }
  return out;
}

void for_each_neighbor(const Model& gamma, long p,
                       const std::function<void(const Move&)>& fn) {
  for (int j = 0; j < p; ++j) {
    if (!gamma.contains(j)) fn(Move{MoveKind::Add, j, -1});
  }
  for (int j : gamma.idx) fn(Move{MoveKind::Delete, -1, j});
  for (int j_del : gamma.idx) {
    for (int j = 0; j < p; ++j) {
      if (!gamma.contains(j)) fn(Move{MoveKind::Swap, j, j_del});
    }
  }
}

long neighborhood_size(const Model& gamma, long p) {
  const long s = gamma.size();
  return (p - s) + s + s * (p - s);
}

/// Position of `move` in the canonical enumeration order of N(gamma).
static long move_index(const Model& gamma, long p, const Move& move) {
  const long s = gamma.size();
  const long n_add = p - s;
  auto comp_rank = [&](int j) {
    return static_cast<long>(j) - rank_in(gamma.idx, j);
  };
  switch (move.kind) {
    case MoveKind::Add:
      return comp_rank(move.j_add);
    case MoveKind::Delete:
      return n_add + rank_in(gamma.idx, move.j_del);
    case MoveKind::Swap:
      return n_add + s + rank_in(gamma.idx, move.j_del) * n_add +
             comp_rank(move.j_add);
  }
  throw Error("move_index: bad move");
}

// ---- Cholesky state ------------------------------------------------------------

namespace {

struct Deleted {
  Matrix R;
  Vector q;
  double dropped_q = 0.0;
  double logdet = 0.0;
};

// Remove factor column k from upper-triangular R and re-triangularize with
// Givens rotations; q transforms with the same rotations.
Deleted givens_delete(const Matrix& R, const Vector& q, int k) {
  const int n = static_cast<int>(R.rows());
  Matrix H(n, n - 1);
  if (k > 0) H.leftCols(k) = R.leftCols(k);
  if (k < n - 1) H.rightCols(n - 1 - k) = R.rightCols(n - 1 - k);
  Vector qv = q;
  for (int i = k; i < n - 1; ++i) {
    const double a = H(i, i), b = H(i + 1, i);
    const double r = std::hypot(a, b);
    if (r == 0.0) continue;
    const double c = a / r, sn = b / r;
    for (int col = i; col < n - 1; ++col) {
      const double hi = H(i, col), hj = H(i + 1, col);
      H(i, col) = c * hi + sn * hj;
      H(i + 1, col) = -sn * hi + c * hj;
    }
    const double qi = qv(i), qj = qv(i + 1);
    qv(i) = c * qi + sn * qj;
    qv(i + 1) = -sn * qi + c * qj;
  }
  Deleted out;
  out.R = H.topRows(n - 1);
  out.q = qv.head(n - 1);
  out.dropped_q = (n >= 1) ? qv(n - 1) : 0.0;
  out.logdet = 2.0 * out.R.diagonal().array().abs().log().sum();
  return out;
}

}  // namespace

void CholState::check_invariants(const VSData& data, double tol) const {
  const int s = model.size();
  if (R.rows() != s || R.cols() != s || q.size() != s)
    throw DimensionError("CholState: factor shape mismatch");
  Matrix A = Matrix::Constant(s, s, 0.0);
  for (int a = 0; a < s; ++a) {
    const Vector ca = data.column(model.idx[static_cast<size_t>(a)]);
    for (int b = a; b < s; ++b) {
      const Vector cb = data.column(model.idx[static_cast<size_t>(b)]);
      A(a, b) = A(b, a) = ca.dot(cb);
    }
    A(a, a) += data.lambda();
  }
  // R is kept in insertion order; compare against A in that order
  Matrix Ao(s, s);
  std::vector<int> pos(static_cast<size_t>(s));
  for (int a = 0; a < s; ++a)
    pos[static_cast<size_t>(a)] =
        rank_in(model.idx, order[static_cast<size_t>(a)]);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      Ao(a, b) = A(pos[static_cast<size_t>(a)], pos[static_cast<size_t>(b)]);
  const Matrix recon = R.transpose() * R;
  if ((recon - Ao).cwiseAbs().maxCoeff() > tol)
    throw Error("CholState: factor no longer reproduces A");
  if (!(rss > 0.0)) throw Error("CholState: nonpositive ridge residual");
}

CholState chol_init(const VSData& data, const Model& model) {
  CholState st;
  st.model = model;
  st.order = model.idx;
  const int s = model.size();
  Matrix A(s, s);
  Matrix cols(data.rows(), s);
  for (int a = 0; a < s; ++a)
    cols.col(a) = data.column(model.idx[static_cast<size_t>(a)]);
  A = cols.transpose() * cols;
  A.diagonal().array() += data.lambda();
  Eigen::LLT<Matrix> llt(A);
  if (s > 0 && llt.info() != Eigen::Success)
    throw IllConditionedError("chol_init: ridge Gram matrix not SPD");
  st.R = llt.matrixU();
  Vector b(s);
  for (int a = 0; a < s; ++a)
    b(a) = data.bz()(model.idx[static_cast<size_t>(a)]);
  st.q = st.R.transpose().triangularView<Eigen::Lower>().solve(b);
  st.rss = data.zz() - st.q.squaredNorm();
  st.logdet = (s > 0)
                  ? 2.0 * st.R.diagonal().array().log().sum()
                  : 0.0;
  st.V = Matrix(s, data.cols());
  for (int a = 0; a < s; ++a) {
    const Vector col = cols.col(a);
    for (long j = 0; j < data.cols(); ++j)
      st.V(a, j) = data.col_dot(static_cast<int>(j), col);
  }
  return st;
}

void chol_update(CholState& state, const Move& move, const VSData& data,
                 bool* refactored) {
  if (refactored) *refactored = false;
  if (move.kind == MoveKind::Delete || move.kind == MoveKind::Swap) {
    const int k = static_cast<int>(
        std::find(state.order.begin(), state.order.end(), move.j_del) -
        state.order.begin());
    if (k == static_cast<int>(state.order.size()))
      throw Error("chol_update: deleting absent column");
    Deleted del = givens_delete(state.R, state.q, k);
    state.R = std::move(del.R);
    state.q = std::move(del.q);
    state.rss += del.dropped_q * del.dropped_q;
    state.logdet = del.logdet;
    state.order.erase(state.order.begin() + k);
    // drop row k of V
    const long rows = state.V.rows();
    Matrix V2(rows - 1, state.V.cols());
    if (k > 0) V2.topRows(k) = state.V.topRows(k);
    if (k < rows - 1)
      V2.bottomRows(rows - 1 - k) = state.V.bottomRows(rows - 1 - k);
    state.V = std::move(V2);
    state.model = apply_move(state.model, Move{MoveKind::Delete, -1, move.j_del});
  }
  if (move.kind == MoveKind::Add || move.kind == MoveKind::Swap) {
    const int j = move.j_add;
    const int s = static_cast<int>(state.order.size());
    Vector vj(s);
    for (int a = 0; a < s; ++a) vj(a) = state.V(a, j);
    const Vector u =
        state.R.transpose().triangularView<Eigen::Lower>().solve(vj);
    const double d2 = data.col_sqnorm() + data.lambda() - u.squaredNorm();
    if (!(d2 > 0.5 * data.lambda())) {
      // numerical loss of definiteness: rebuild everything from scratch
      Model grown =
          apply_move(state.model, Move{MoveKind::Add, move.j_add, -1});
      state = chol_init(data, grown);
      if (refactored) *refactored = true;
      return;
    }
    const double d = std::sqrt(d2);
    const double qa = (data.bz()(j) - u.dot(state.q)) / d;
    Matrix R2 = Matrix::Zero(s + 1, s + 1);
    R2.topLeftCorner(s, s) = state.R;
    R2.topRightCorner(s, 1) = u;
    R2(s, s) = d;
    state.R = std::move(R2);
    Vector q2(s + 1);
    q2.head(s) = state.q;
    q2(s) = qa;
    state.q = std::move(q2);
    state.rss -= qa * qa;
    state.logdet += 2.0 * std::log(d);
    state.order.push_back(j);
    // append row w_j^T W to V
    const Vector col = data.column(j);
    Matrix V2(state.V.rows() + 1, data.cols());
    V2.topRows(state.V.rows()) = state.V;
    for (long jj = 0; jj < data.cols(); ++jj)
      V2(state.V.rows(), jj) = data.col_dot(static_cast<int>(jj), col);
    state.V = std::move(V2);
    state.model = apply_move(state.model, Move{MoveKind::Add, move.j_add, -1});
  }
}

namespace {

double marginal_from_parts(const VSData& data, int size, double logdet,
                           double rss) {
  const double m = static_cast<double>(data.rows());
  const double p = static_cast<double>(data.cols());
  const double s = static_cast<double>(size);
  return 0.5 * s * std::log(data.lambda()) - 0.5 * logdet -
         0.5 * (m - 1.0) * std::log(std::max(rss, 1e-300)) +
         s * std::log(data.omega()) + (p - s) * std::log1p(-data.omega());
}

}  // namespace

double log_marginal(const VSData& data, const CholState& state) {
  if (!(state.rss > 0.0))
    throw Error("log_marginal: nonpositive ridge residual (refactorize)");
  return marginal_from_parts(data, state.model.size(), state.logdet, state.rss);
}

NeighborhoodScores score_neighborhood(const VSData& data,
                                      const CholState& state,
                                      MoveCounters* counters) {
  const long p = data.cols();
  const Model& gamma = state.model;
  const int s = gamma.size();
  const long total = neighborhood_size(gamma, p);
  NeighborhoodScores sc;
  sc.moves.reserve(static_cast<size_t>(total));
  sc.log_post = Vector(total);
  sc.log_post_current = log_marginal(data, state);
  sc.n_add = p - s;
  sc.n_del = s;
  sc.n_swap = static_cast<long>(s) * (p - s);

  long units = 0;
  const double snorm_lam = data.col_sqnorm() + data.lambda();

  // shared work: R^{-1} (for the deletion identities) and beta_hat
  Matrix Rinv;
  Vector beta_hat;
  if (s > 0) {
    Rinv = state.R.triangularView<Eigen::Upper>().solve(
        Matrix::Identity(s, s));
    beta_hat = state.R.triangularView<Eigen::Upper>().solve(state.q);
  }

  long pos = 0;
  // additions
  for (int j = 0; j < p; ++j) {
    if (gamma.contains(j)) continue;
    double d2, qa;
    if (s == 0) {
      d2 = snorm_lam;
      qa = data.bz()(j) / std::sqrt(d2);
    } else {
      Vector vj(s);
      for (int a = 0; a < s; ++a) vj(a) = state.V(a, j);
      const Vector u =
          state.R.transpose().triangularView<Eigen::Lower>().solve(vj);
      d2 = snorm_lam - u.squaredNorm();
      qa = (data.bz()(j) - u.dot(state.q)) / std::sqrt(std::max(d2, 1e-300));
      units += static_cast<long>(s) * s + 2L * s;
    }
    sc.moves.push_back(Move{MoveKind::Add, j, -1});
    sc.log_post(pos++) =
        (d2 > 0.0) ? marginal_from_parts(data, s + 1,
                                         state.logdet + std::log(d2),
                                         state.rss - qa * qa)
                   : kNegInf;
  }
  // deletions via the inverse-factor identities
  for (int j : gamma.idx) {
    const int k = static_cast<int>(
        std::find(state.order.begin(), state.order.end(), j) -
        state.order.begin());
    const double ainv_kk = Rinv.row(k).squaredNorm();
    const double rss_del = state.rss + beta_hat(k) * beta_hat(k) / ainv_kk;
    const double logdet_del = state.logdet + std::log(ainv_kk);
    sc.moves.push_back(Move{MoveKind::Delete, -1, j});
    sc.log_post(pos++) = marginal_from_parts(data, s - 1, logdet_del, rss_del);
    units += s;
  }
  // swaps: delete-then-add reusing the deletion factor
  for (int j_del : gamma.idx) {
    const int k = static_cast<int>(
        std::find(state.order.begin(), state.order.end(), j_del) -
        state.order.begin());
    const Deleted del = givens_delete(state.R, state.q, k);
    const double rss_del = state.rss + del.dropped_q * del.dropped_q;
    const int sd = s - 1;
    for (int j = 0; j < p; ++j) {
      if (gamma.contains(j)) continue;
      double d2, qa;
      if (sd == 0) {
        d2 = snorm_lam;
        qa = data.bz()(j) / std::sqrt(d2);
      } else {
        Vector vj(sd);
        for (int a = 0, b = 0; a < s; ++a) {
          if (a == k) continue;
          vj(b++) = state.V(a, j);
        }
        const Vector u =
            del.R.transpose().triangularView<Eigen::Lower>().solve(vj);
        d2 = snorm_lam - u.squaredNorm();
        qa = (data.bz()(j) - u.dot(del.q)) / std::sqrt(std::max(d2, 1e-300));
        units += static_cast<long>(sd) * sd + 3L * sd;
      }
      sc.moves.push_back(Move{MoveKind::Swap, j, j_del});
      sc.log_post(pos++) =
          (d2 > 0.0) ? marginal_from_parts(data, s,
                                           del.logdet + std::log(d2),
                                           rss_del - qa * qa)
                     : kNegInf;
    }
  }
  if (counters) {
    counters->candidates += total;
    counters->work_units += units;
  }
  return sc;
}

// ---- proposal pmfs --------------------------------------------------------------

namespace {

struct ClassWeights {
  double log_add = kNegInf, log_del = kNegInf, log_swap = kNegInf;
};

ClassWeights effective_class_weights(const RwWeights& w, long s, long p) {
  double b_add, b_del, b_swap;
  if (w.symmetric) {
    b_add = static_cast<double>(p - s) / (2.0 * static_cast<double>(p));
    b_del = static_cast<double>(s) / (2.0 * static_cast<double>(p));
    b_swap = 0.5;
  } else {
    b_add = w.b_add;
    b_del = w.b_del;
    b_swap = w.b_swap;
  }
  const long n_add = p - s, n_del = s, n_swap = s * (p - s);
  if (n_add == 0) b_add = 0.0;
  if (n_del == 0) b_del = 0.0;
  if (n_swap == 0) b_swap = 0.0;
  const double total = b_add + b_del + b_swap;
  if (!(total > 0.0)) throw Error("rw proposal: no legal moves");
  ClassWeights cw;
  if (b_add > 0.0) cw.log_add = std::log(b_add / total);
  if (b_del > 0.0) cw.log_del = std::log(b_del / total);
  if (b_swap > 0.0) cw.log_swap = std::log(b_swap / total);
  return cw;
}

}  // namespace

Vector rw_log_pmf(const RwWeights& w, const Model& gamma, long p,
                  const NeighborhoodScores& scores) {
  const long s = gamma.size();
  const ClassWeights cw = effective_class_weights(w, s, p);
  const double la = cw.log_add - std::log(static_cast<double>(p - s));
  const double ld = (s > 0) ? cw.log_del - std::log(static_cast<double>(s))
                            : kNegInf;
  const double lo = (scores.n_swap > 0)
                        ? cw.log_swap - std::log(static_cast<double>(s) *
                                                 static_cast<double>(p - s))
                        : kNegInf;
  Vector out(scores.log_post.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    switch (scores.moves[static_cast<size_t>(i)].kind) {
      case MoveKind::Add: out(i) = la; break;
      case MoveKind::Delete: out(i) = ld; break;
      case MoveKind::Swap: out(i) = lo; break;
    }
  }
  return out;
}

Vector informed_log_pmf(const NeighborhoodScores& scores) {
  const double lz = logsumexp(scores.log_post);
  if (lz == kNegInf)
    throw Error("informed_log_pmf: every neighbor has zero posterior mass");
  return (scores.log_post.array() - lz).matrix();
}

Affinity neighborhood_affinity(const Vector& f_log_pmf,
                               const Vector& g_log_pmf) {
  if (f_log_pmf.size() != g_log_pmf.size())
    throw DimensionError("neighborhood_affinity: support mismatch");
  const Vector half = 0.5 * (f_log_pmf + g_log_pmf);
  const double v = std::exp(logsumexp(half));
  return make_affinity(std::min(v, 1.0), AffinityMethod::ClosedForm);
}

Vector residual_pmf(const Vector& f_log_pmf, const Vector& g_log_pmf,
                    const Affinity& aff) {
  if (aff.degenerate())
    throw DegenerateDirectionError("residual_pmf: degenerate direction");
  const double a = aff.value;
  Vector h(f_log_pmf.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    const double sf = std::exp(0.5 * f_log_pmf(i));
    const double sg = std::exp(0.5 * g_log_pmf(i));
    const double r = sg - a * sf;
    h(i) = r * r / (1.0 - a * a);
  }
  return h;
}

// ---- sampler steps -----------------------------------------------------------------

VsState vs_init(const VSData& data, const Model& start, MoveCounters* counters) {
  VsState st;
  st.model = start;
  st.chol = chol_init(data, start);
  st.scores = score_neighborhood(data, st.chol, counters);
  return st;
}

namespace {

long sample_categorical(const Vector& log_pmf, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double cum = 0.0;
  for (Eigen::Index i = 0; i < log_pmf.size(); ++i) {
    cum += std::exp(log_pmf(i));
    if (u < cum) return i;
  }
  return log_pmf.size() - 1;
}

long sample_mixture_index(const Vector& f_log, const Vector& h_lin,
                          double w_base, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng) < w_base) return sample_categorical(f_log, rng);
  const double u = unif(rng);
  double cum = 0.0;
  for (Eigen::Index i = 0; i < h_lin.size(); ++i) {
    cum += h_lin(i);
    if (u < cum) return i;
  }
  return h_lin.size() - 1;
}

double mixture_log_prob(double f_log, double h_lin, double eps, double theta) {
  const double c = std::cos(eps * theta), s = std::sin(eps * theta);
  return std::log(c * c * std::exp(f_log) + s * s * h_lin);
}

Move reverse_move(const Move& move) {
  switch (move.kind) {
    case MoveKind::Add: return Move{MoveKind::Delete, -1, move.j_add};
    case MoveKind::Delete: return Move{MoveKind::Add, move.j_del, -1};
    case MoveKind::Swap: return Move{MoveKind::Swap, move.j_del, move.j_add};
  }
  throw Error("reverse_move: bad move");
}

}  // namespace

VsStepResult vs_geometric_step(const VSData& data, VsState& state, double eps,
                               const RwWeights& weights, Rng& rng,
                               MoveCounters* counters) {
  const long p = data.cols();
  const Vector f_log = rw_log_pmf(weights, state.model, p, state.scores);
  const Vector g_log = informed_log_pmf(state.scores);
  const Affinity aff = neighborhood_affinity(f_log, g_log);

  long pick;
  double log_fwd;
  if (aff.degenerate()) {
    pick = sample_categorical(f_log, rng);
    log_fwd = f_log(pick);
  } else {
    const Vector h = residual_pmf(f_log, g_log, aff);
    const double arg = eps * aff.angle;
    const double w_base = std::cos(arg) * std::cos(arg);
    pick = sample_mixture_index(f_log, h, w_base, rng);
    log_fwd = mixture_log_prob(f_log(pick), h(pick), eps, aff.angle);
  }
  const Move move = state.scores.moves[static_cast<size_t>(pick)];
  const double log_post_prop = state.scores.log_post(pick);

  // proposed model's own neighborhood drives the reverse density
  CholState chol_prop = state.chol;
  bool refactored = false;
  chol_update(chol_prop, move, data, &refactored);
  NeighborhoodScores scores_prop = score_neighborhood(data, chol_prop, counters);
  const Vector f_log_rev =
      rw_log_pmf(weights, chol_prop.model, p, scores_prop);
  const Vector g_log_rev = informed_log_pmf(scores_prop);
  const Affinity aff_rev = neighborhood_affinity(f_log_rev, g_log_rev);
  const long rev_idx = move_index(chol_prop.model, p, reverse_move(move));
  double log_rev;
  if (aff_rev.degenerate()) {
    log_rev = f_log_rev(rev_idx);
  } else {
    const Vector h_rev = residual_pmf(f_log_rev, g_log_rev, aff_rev);
    log_rev = mixture_log_prob(f_log_rev(rev_idx), h_rev(rev_idx), eps,
                               aff_rev.angle);
  }

  VsStepResult r;
  r.log_alpha = log_post_prop + log_rev - state.scores.log_post_current - log_fwd;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (std::log(unif(rng)) < std::min(0.0, r.log_alpha)) {
    r.accepted = true;
    state.model = chol_prop.model;
    state.chol = std::move(chol_prop);
    state.scores = std::move(scores_prop);
  }
  return r;
}

VsStepResult vs_rw_step(const VSData& data, VsState& state,
                        const RwWeights& weights, Rng& rng,
                        MoveCounters* counters) {
  const long p = data.cols();
  const Vector f_log = rw_log_pmf(weights, state.model, p, state.scores);
  const long pick = sample_categorical(f_log, rng);
  const Move move = state.scores.moves[static_cast<size_t>(pick)];
  const double log_fwd = f_log(pick);
  const double log_post_prop = state.scores.log_post(pick);

  CholState chol_prop = state.chol;
  chol_update(chol_prop, move, data);
  NeighborhoodScores scores_prop = score_neighborhood(data, chol_prop, counters);
  const Vector f_log_rev = rw_log_pmf(weights, chol_prop.model, p, scores_prop);
  const long rev_idx = move_index(chol_prop.model, p, reverse_move(move));
  const double log_rev = f_log_rev(rev_idx);

  VsStepResult r;
  r.log_alpha = log_post_prop + log_rev - state.scores.log_post_current - log_fwd;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (std::log(unif(rng)) < std::min(0.0, r.log_alpha)) {
    r.accepted = true;
    state.model = chol_prop.model;
    state.chol = std::move(chol_prop);
    state.scores = std::move(scores_prop);
  }
  return r;
}

// ---- simulation designs --------------------------------------------------------------

DesignKind design_from_string(const std::string& name) {
  if (name == "independent") return DesignKind::Independent;
  if (name == "compound") return DesignKind::CompoundSymmetry;
  if (name == "ar" || name == "autoregressive") return DesignKind::Autoregressive;
  if (name == "factor") return DesignKind::FactorModel;
  if (name == "extreme") return DesignKind::ExtremeCorrelation;
  throw ConfigError("unknown design kind '" + name + "'");
}

SimulatedDesign simulate_design(DesignKind kind, long p, long m, double r2,
                                std::uint64_t seed) {
  if (!(r2 > 0.0) || !(r2 < 1.0)) throw Error("simulate_design: R2 in (0,1)");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  auto randn_mat = [&](long rows, long cols) {
    Matrix a(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) a(i, j) = nd(rng);
    return a;
  };

  SimulatedDesign out;
  out.beta = Vector::Zero(p);
  double signal = 0.0;  // beta' Cov(W) beta under the population covariance
  const double rho = 0.6;

  switch (kind) {
    case DesignKind::Independent: {
      out.W = randn_mat(m, p);
      const double b[5] = {0.5, 0.75, 1.0, 1.25, 1.5};
      for (int j = 0; j < 5; ++j) out.beta(j) = b[j];
      signal = out.beta.squaredNorm();
      break;
    }
    case DesignKind::CompoundSymmetry: {
      const Matrix e = randn_mat(m, p);
      out.W = Matrix(m, p);
      for (long i = 0; i < m; ++i) {
        const double shared = nd(rng);
        out.W.row(i) = std::sqrt(1.0 - rho) * e.row(i).array() +
                       std::sqrt(rho) * shared;
      }
      for (int j = 0; j < 5; ++j) out.beta(j) = 5.0;
      const double sum_b = out.beta.sum();
      signal = (1.0 - rho) * out.beta.squaredNorm() + rho * sum_b * sum_b;
      break;
    }
    case DesignKind::Autoregressive: {
      out.W = Matrix(m, p);
      Vector prev(m);
      for (long i = 0; i < m; ++i) prev(i) = nd(rng);
      for (long j = 0; j < p; ++j) {
        Vector b(m);
        for (long i = 0; i < m; ++i) b(i) = nd(rng);
        out.W.col(j) = rho * prev + std::sqrt(1.0 - rho * rho) * b;
        prev = out.W.col(j);
      }
      out.beta(0) = 3.0;
      out.beta(3) = 1.5;
      out.beta(6) = 2.0;
      const int nz[3] = {0, 3, 6};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          signal += out.beta(nz[a]) * out.beta(nz[b]) *
                    std::pow(rho, std::abs(nz[a] - nz[b]));
      break;
    }
    case DesignKind::FactorModel: {
      const Matrix F = randn_mat(p, 2);
      out.W = Matrix(m, p);
      for (long i = 0; i < m; ++i) {
        Vector u(2);
        u << nd(rng), nd(rng);
        Vector v(p);
        for (long j = 0; j < p; ++j) v(j) = nd(rng);
        out.W.row(i) = (F * u + v).transpose();
      }
      for (int j = 0; j < 5; ++j) out.beta(j) = 5.0;
      signal = (F.transpose() * out.beta).squaredNorm() +
               out.beta.squaredNorm();
      break;
    }
    case DesignKind::ExtremeCorrelation: {
      const Matrix b = randn_mat(m, p);
      const Matrix t = randn_mat(m, 5);
      const Vector tsum = t.rowwise().sum();
      out.W = Matrix(m, p);
      for (long j = 0; j < p; ++j) {
        if (j < 5)
          out.W.col(j) = (b.col(j) + t.col(j)) / std::sqrt(2.0);
        else
          out.W.col(j) = (b.col(j) + tsum) / 2.0;
      }
      for (int j = 0; j < 5; ++j) out.beta(j) = 5.0;
      // the first five columns are uncorrelated with unit variance
      signal = out.beta.squaredNorm();
      break;
    }
  }

  out.sigma2 = signal * (1.0 - r2) / r2;
  out.z = out.W * out.beta;
  const double sigma = std::sqrt(out.sigma2);
  for (long i = 0; i < m; ++i) out.z(i) += sigma * nd(rng);
  for (long j = 0; j < p; ++j)
    if (out.beta(j) != 0.0) out.true_model.idx.push_back(static_cast<int>(j));
  return out;
}

// ---- summaries -------------------------------------------------------------------------

double model_r2(const VSData& data, const Model& model) {
  const int s = model.size();
  if (s == 0) return 0.0;
  Matrix cols(data.rows(), s);
  for (int a = 0; a < s; ++a)
    cols.col(a) = data.column(model.idx[static_cast<size_t>(a)]);
  const Matrix gram = cols.transpose() * cols;
  const Vector rhs = cols.transpose() * data.ztilde();
  const Vector beta = gram.ldlt().solve(rhs);
  const double rss = (data.ztilde() - cols * beta).squaredNorm();
  return 1.0 - rss / data.zz();
}

VsSummaries posterior_summaries(const std::vector<Model>& visited,
                                const std::vector<double>& log_post,
                                const VSData& data) {
  if (visited.empty()) throw Error("posterior_summaries: empty trace");
  if (visited.size() != log_post.size())
    throw DimensionError("posterior_summaries: trace length mismatch");
  const long p = data.cols();
  VsSummaries out;
  out.mip = Vector::Zero(p);
  for (const Model& g : visited)
    for (int j : g.idx) out.mip(j) += 1.0;
  out.mip /= static_cast<double>(visited.size());

  std::map<std::vector<int>, double> unique;
  for (size_t i = 0; i < visited.size(); ++i) unique[visited[i].idx] = log_post[i];
  double max_lp = kNegInf;
  for (const auto& [k, lp] : unique) max_lp = std::max(max_lp, lp);
  double z = 0.0;
  for (const auto& [k, lp] : unique) z += std::exp(lp - max_lp);
  out.weighted_mip = Vector::Zero(p);
  for (const auto& [k, lp] : unique) {
    const double w = std::exp(lp - max_lp) / z;
    for (int j : k) out.weighted_mip(j) += w;
  }

  for (long j = 0; j < p; ++j) {
    if (out.mip(j) > 0.5) out.median_model.idx.push_back(static_cast<int>(j));
    if (out.weighted_mip(j) > 0.5)
      out.wam_model.idx.push_back(static_cast<int>(j));
  }
  out.r2_median = model_r2(data, out.median_model);
  out.r2_wam = model_r2(data, out.wam_model);
  return out;
}

// ---- sparse binary format ------------------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'G', 'M', 'H', 'S'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_sparse_binary(const std::string& path,
                         const std::vector<std::vector<int>>& one_rows,
                         long m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("write_sparse_binary: cannot open " + path);
  const std::int64_t m64 = m;
  const std::int64_t p64 = static_cast<std::int64_t>(one_rows.size());
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), sizeof(kVersion));
  out.write(reinterpret_cast<const char*>(&m64), sizeof(m64));
  out.write(reinterpret_cast<const char*>(&p64), sizeof(p64));
  std::vector<std::int64_t> offsets(one_rows.size() + 1, 0);
  for (size_t j = 0; j < one_rows.size(); ++j)
    offsets[j + 1] = offsets[j] + static_cast<std::int64_t>(one_rows[j].size());
  out.write(reinterpret_cast<const char*>(offsets.data()),
            static_cast<std::streamsize>(offsets.size() * sizeof(std::int64_t)));
  for (const auto& col : one_rows) {
    for (int r : col) {
      const std::int32_t r32 = r;
      out.write(reinterpret_cast<const char*>(&r32), sizeof(r32));
    }
  }
}

std::vector<std::vector<int>> read_sparse_binary(const std::string& path,
                                                 long* m_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("read_sparse_binary: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::int64_t m64 = 0, p64 = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&m64), sizeof(m64));
  in.read(reinterpret_cast<char*>(&p64), sizeof(p64));
  if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kVersion)
    throw ConfigError("read_sparse_binary: bad header in " + path);
  std::vector<std::int64_t> offsets(static_cast<size_t>(p64) + 1);
  in.read(reinterpret_cast<char*>(offsets.data()),
          static_cast<std::streamsize>(offsets.size() * sizeof(std::int64_t)));
  std::vector<std::vector<int>> cols(static_cast<size_t>(p64));
  for (size_t j = 0; j < cols.size(); ++j) {
    const std::int64_t len = offsets[j + 1] - offsets[j];
    cols[j].resize(static_cast<size_t>(len));
    for (std::int64_t i = 0; i < len; ++i) {
      std::int32_t r32 = 0;
      in.read(reinterpret_cast<char*>(&r32), sizeof(r32));
      cols[j][static_cast<size_t>(i)] = r32;
    }
  }
  if (!in) throw ConfigError("read_sparse_binary: truncated file " + path);
  if (m_out) *m_out = m64;
  return cols;
}

}  // namespace gmh::varsel
