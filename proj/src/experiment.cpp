#include "gmh/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "gmh/diagnostics.hpp"
#include "gmh/io.hpp"
#include "gmh/verify.hpp"

namespace gmh {

using nlohmann::json;

namespace {

Density parse_density_spec(const std::string& spec, const TargetBundle& tb) {
  std::istringstream is(spec);
  std::string kind;
  is >> kind;
  std::vector<double> params;
  double v;
  while (is >> v) params.push_back(v);
  if (kind == "target") {
    if (!tb.density)
      throw ConfigError("direction 'target' needs a normalized target");
    return *tb.density;
  }
  if (kind == "component") {
    if (params.size() != 1 || tb.components.empty())
      throw ConfigError("direction 'component' needs an index and a mixture target");
    const int i = static_cast<int>(params[0]) - 1;
    if (i < 0 || i >= static_cast<int>(tb.components.size()))
      throw ConfigError("component index out of range");
    return mvnormal_density(tb.components[static_cast<size_t>(i)].mean,
                            tb.components[static_cast<size_t>(i)].cov);
  }
  if (kind == "laplace") {
    if (!tb.logistic)
      throw ConfigError("direction 'laplace' needs a logistic target");
    const Vector mode = logistic_map_estimate(*tb.logistic);
    const Matrix cov =
        (-logistic_hessian(*tb.logistic, mode))
            .llt()
            .solve(Matrix::Identity(tb.target.dim, tb.target.dim));
    return mvnormal_density(mode, 0.5 * (cov + cov.transpose()));
  }
  if (kind == "mvnormal") {
    // mvnormal m1 .. md s  (spherical with sd s)
    if (params.size() < 2) throw ConfigError("mvnormal needs mean and sd");
    const int d = static_cast<int>(params.size()) - 1;
    Vector mean(d);
    for (int i = 0; i < d; ++i) mean(i) = params[static_cast<size_t>(i)];
    const double sd = params.back();
    return mvnormal_density(mean, sd * sd * Matrix::Identity(d, d));
  }
  return builtin_density(kind, params);
}

AffinityConfig parse_affinity(const Config& cfg, bool state_free_base) {
  AffinityConfig ac;
  const std::string mode = cfg.get_or("kernel", "affinity", "auto");
  ac.mc_samples = cfg.get_long_or("kernel", "mc_samples", 1000);
  if (mode == "monte_carlo") {
    ac.fallback = AffinityMethod::MonteCarlo;
  } else if (mode == "auto" || mode == "quadrature" || mode == "closed_form") {
    ac.fallback = AffinityMethod::Quadrature;
    if (state_free_base) ac.fixed_grid = Grid::sinh_spaced(1e4, 200001);
  } else {
    throw ConfigError("unknown affinity mode '" + mode + "'");
  }
  return ac;
}

/// Base-family keys are "scale"/"proposal"/"h" for plain kernels and
/// "base_scale"/"base_proposal"/"base_h" inside a geometric kernel.
ConditionalDensity parse_base_family(const Config& cfg, const TargetBundle& tb,
                                     const std::string& base,
                                     const std::string& prefix,
                                     bool* state_free) {
  if (base == "random_walk") {
    const std::vector<double> scales =
        cfg.get_doubles("kernel", prefix + "scale");
    Vector sd(tb.target.dim);
    if (scales.size() == 1)
      sd.setConstant(scales[0]);
    else if (static_cast<int>(scales.size()) == tb.target.dim)
      for (int i = 0; i < tb.target.dim; ++i) sd(i) = scales[static_cast<size_t>(i)];
    else
      throw ConfigError(prefix + "scale needs 1 or dim entries");
    *state_free = false;
    return random_walk_family(sd.array().square().matrix().asDiagonal());
  }
  if (base == "independent") {
    Density prop =
        parse_density_spec(cfg.get("kernel", prefix + "proposal"), tb);
    if (prop.dim != tb.target.dim)
      throw ConfigError("base proposal dimension mismatch");
    *state_free = true;
    return independent_family(std::move(prop));
  }
  if (base == "mala") {
    *state_free = false;
    return mala_family(tb.target, cfg.get_double("kernel", prefix + "h"));
  }
  if (base == "mmala") {
    *state_free = false;
    return mmala_family(tb.target, cfg.get_double("kernel", prefix + "h"));
  }
  throw ConfigError("unknown base kernel '" + base + "'");
}

DirectionSet parse_directions(const Config& cfg, const TargetBundle& tb) {
  const std::string spec = cfg.get("kernel", "directions");
  DirectionSet ds;
  std::istringstream is(spec);
  std::string entry;
  while (std::getline(is, entry, ';')) {
    const auto a = entry.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = entry.find_last_not_of(" \t");
    ds.directions.push_back(parse_density_spec(entry.substr(a, b - a + 1), tb));
  }
  if (ds.directions.empty()) throw ConfigError("directions: empty list");
  if (cfg.has("kernel", "weights")) {
    const auto w = cfg.get_doubles("kernel", "weights");
    if (w.size() != ds.directions.size())
      throw ConfigError("weights length must match directions");
    ds.weights = Eigen::Map<const Vector>(w.data(), static_cast<long>(w.size()));
  } else {
    ds.weights = Vector::Constant(static_cast<long>(ds.directions.size()),
                                  1.0 / static_cast<double>(ds.directions.size()));
  }
  ds.validate();
  return ds;
}

}  // namespace

TargetBundle build_target(const Config& cfg) {
  TargetBundle tb;
  tb.kind = cfg.get("target", "kind");
  if (tb.kind == "normal") {
    const double mean = cfg.get_double_or("target", "mean", 0.0);
    const double sd = cfg.get_double_or("target", "sd", 1.0);
    tb.density = normal_density(mean, sd);
    tb.target = target_from_density(*tb.density);
    tb.start_default = vec1(mean);
  } else if (tb.kind == "cauchy") {
    const double loc = cfg.get_double_or("target", "loc", 0.0);
    const double scale = cfg.get_double_or("target", "scale", 1.0);
    tb.density = cauchy_density(loc, scale);
    tb.target = target_from_density(*tb.density);
    tb.start_default = vec1(loc);
  } else if (tb.kind == "student_t") {
    tb.density = student_t_density(cfg.get_double("target", "nu"),
                                   cfg.get_double_or("target", "loc", 0.0),
                                   cfg.get_double_or("target", "scale", 1.0));
    tb.target = target_from_density(*tb.density);
    tb.start_default = vec1(0.0);
  } else if (tb.kind == "mixture_example") {
    tb.density = mixture_example_density();
    tb.target = mixture_example_target();
    tb.components = mixture_example_components();
    tb.start_default = vec2(5.0, 5.0);
  } else if (tb.kind == "six_mode") {
    tb.target = six_mode_target();
    tb.start_default = vec2(0.05, 1.5);
  } else if (tb.kind == "logistic") {
    const std::string path = cfg.get("target", "data");
    const std::string resp = cfg.get("target", "response");
    const double prior_var = cfg.get_double_or("target", "prior_var", 1e3);
    tb.logistic = load_logistic_data(path, resp, prior_var);
    tb.target = logistic_target(*tb.logistic);
    tb.start_default = Vector::Zero(tb.target.dim);
  } else {
    throw ConfigError("unknown target kind '" + tb.kind + "'");
  }
  return tb;
}

KernelBundle build_kernel(const Config& cfg, const TargetBundle& tb) {
  KernelBundle kb;
  kb.kind = cfg.get("kernel", "kind");
  const TargetModel& target = tb.target;
  if (kb.kind == "random_walk" || kb.kind == "independent" ||
      kb.kind == "mala" || kb.kind == "mmala") {
    bool state_free = false;
    ConditionalDensity fam = parse_base_family(cfg, tb, kb.kind, "", &state_free);
    auto kernel = std::make_shared<FamilyKernel>(
        std::move(fam),
        kb.kind == "random_walk" ? KernelKind::RandomWalk
        : kb.kind == "independent" ? KernelKind::Independent
        : kb.kind == "mala" ? KernelKind::Mala : KernelKind::Mmala,
        kb.kind == "random_walk");
    kb.step = make_mh_step(target, kernel);
    return kb;
  }
  if (kb.kind == "geometric") {
    bool state_free = false;
    ConditionalDensity fam = parse_base_family(
        cfg, tb, cfg.get_or("kernel", "base", "random_walk"), "base_",
        &state_free);
    DirectionSet ds = parse_directions(cfg, tb);
    const double eps = cfg.get_double("kernel", "epsilon");
    AffinityConfig ac = parse_affinity(cfg, state_free);
    auto kernel = std::make_shared<GeometricKernel>(
        GeometricProposal(std::move(fam), std::move(ds), eps, ac));
    const std::string variant = cfg.get_or("kernel", "variant", "full");
    if (variant == "full")
      kb.step = make_mh_step(target, kernel);
    else if (variant == "mixture")
      kb.step = make_mixture_step(target, kernel);
    else
      throw ConfigError("unknown kernel variant '" + variant + "'");
    return kb;
  }
  if (kb.kind == "rw_gibbs" || kb.kind == "geometric_gibbs") {
    const std::vector<double> scales = cfg.get_doubles("kernel", "scale");
    if (static_cast<int>(scales.size()) != target.dim)
      throw ConfigError("gibbs scale needs one sd per coordinate");
    std::vector<GibbsBlock> blocks;
    if (kb.kind == "rw_gibbs") {
      for (int c = 0; c < target.dim; ++c)
        blocks.push_back(rw_gibbs_block(c, scales[static_cast<size_t>(c)]));
    } else {
      const double eps = cfg.get_double("kernel", "epsilon");
      Density g = parse_density_spec(cfg.get("kernel", "g"), tb);
      if (g.dim != 1)
        throw ConfigError("geometric_gibbs direction must be one-dimensional");
      for (int c = 0; c < target.dim; ++c)
        blocks.push_back(geometric_rw_gibbs_block(
            c, scales[static_cast<size_t>(c)], g, eps));
    }
    kb.step = gibbs_compose(target, std::move(blocks));
    return kb;
  }
  throw ConfigError("unknown kernel kind '" + kb.kind + "'");
}

namespace {

json target_extras(const TargetBundle& tb, const ChainTrace& trace) {
  json extras;
  if (tb.kind == "mixture_example") {
    long near0 = 0;
    for (long i = 0; i < trace.size(); ++i) {
      const Vector x = trace.states.row(i);
      const double d0 = x.squaredNorm();
      const double d1 = (x - vec2(10.0, 10.0)).squaredNorm();
      if (d0 < d1) ++near0;
    }
    const double f0 = static_cast<double>(near0) /
                      static_cast<double>(std::max(trace.size(), 1L));
    extras["mode_occupancy"] = {f0, 1.0 - f0};
    extras["mean_estimate"] = {trace.states.col(0).mean(),
                               trace.states.col(1).mean()};
  } else if (tb.kind == "six_mode") {
    std::vector<long> counts(6, 0);
    for (long i = 0; i < trace.size(); ++i) {
      const int b = six_mode_basin(trace.states(i, 1));
      if (b >= 0) ++counts[static_cast<size_t>(b)];
    }
    int visited = 0;
    json fractions = json::array();
    for (long c : counts) {
      if (c > 0) ++visited;
      fractions.push_back(static_cast<double>(c) /
                          static_cast<double>(std::max(trace.size(), 1L)));
    }
    extras["basins_visited"] = visited;
    extras["basin_fractions"] = fractions;
  }
  return extras;
}

}  // namespace

int run_experiment(const Config& cfg, std::ostream& log) {
  TargetBundle tb = build_target(cfg);
  KernelBundle kb = build_kernel(cfg, tb);

  const long iterations = cfg.get_long("run", "iterations");
  const std::uint64_t seed =
      static_cast<std::uint64_t>(cfg.get_long_or("run", "seed", 1));
  Vector start = tb.start_default;
  if (cfg.has("run", "start")) {
    const auto s = cfg.get_doubles("run", "start");
    if (static_cast<int>(s.size()) != tb.target.dim)
      throw ConfigError("run.start needs one value per coordinate");
    start = Eigen::Map<const Vector>(s.data(), static_cast<long>(s.size()));
  }
  const std::string prefix = cfg.get("run", "output");
  const int max_lag = static_cast<int>(cfg.get_long_or("run", "max_lag", 20));
  cfg.validate_consumed();

  const ChainTrace trace = run_chain(kb.step, start, iterations, seed);

  write_trace_csv(prefix + "_trace.csv", trace);
  json summary;
  summary["target"] = tb.kind;
  summary["kernel"] = kb.kind;
  summary["iterations"] = trace.size();
  summary["seed"] = seed;
  summary["acceptance_rate"] = trace.acceptance_rate();
  if (!trace.error.empty()) summary["error"] = trace.error;
  const json extras = target_extras(tb, trace);
  if (!extras.empty()) summary["extras"] = extras;

  if (trace.size() >= 100 && trace.error.empty()) {
    try {
      const DiagnosticsReport rep = diagnose(trace, max_lag);
      std::ofstream(prefix + "_diagnostics.txt") << rep.to_text();
      std::ofstream(prefix + "_diagnostics.csv") << rep.to_csv();
      summary["msjd"] = rep.msjd_value;
      json ess_arr = json::array();
      for (Eigen::Index j = 0; j < rep.ess_per_coordinate.size(); ++j)
        ess_arr.push_back(rep.ess_per_coordinate(j));
      summary["ess"] = ess_arr;
      if (std::isfinite(rep.mess)) summary["mess"] = rep.mess;
    } catch (const std::exception& e) {
      summary["diagnostics_error"] = e.what();
    }
  }
  std::ofstream(prefix + "_summary.json") << summary.dump(2) << "\n";
  log << "wrote " << prefix << "_trace.csv (" << trace.size() << " states, "
      << "acceptance " << trace.acceptance_rate() << ")\n";
  if (!trace.error.empty()) {
    log << "chain aborted: " << trace.error << "\n";
    return 2;
  }
  return 0;
}

int run_verify(std::ostream& log, bool corrupt, int trials) {
  const auto fixtures = default_ordering_fixtures();
  const VerifySuite suite = run_ordering_verification(fixtures, trials, corrupt);
  for (const auto& c : suite.checks) {
    log << (c.pass ? "PASS" : "FAIL") << "  " << c.fixture << "  " << c.check
        << "  (" << c.value << ")\n";
  }
  log << (suite.all_pass() ? "verification passed\n" : "verification FAILED\n");
  return suite.all_pass() ? 0 : 3;
}

namespace {

struct VarselReplicate {
  std::uint64_t seed = 0;
  long hit_iteration = -1;
  bool best_is_true = false;
  double best_log_post = kNegInf;
  varsel::Model best_model;
  varsel::VsSummaries summaries;
  double acceptance = 0.0;
  std::vector<varsel::Model> visited;
  std::vector<double> log_post;
  std::vector<std::uint8_t> accepted;
};

}  // namespace

int run_varsel(const Config& cfg, std::ostream& log) {
  using namespace varsel;
  const long iterations = cfg.get_long("varsel", "iterations");
  const std::uint64_t master_seed =
      static_cast<std::uint64_t>(cfg.get_long_or("varsel", "seed", 1));
  const int replicates =
      static_cast<int>(cfg.get_long_or("varsel", "replicates", 1));
  const double eps = cfg.get_double_or("varsel", "epsilon", 0.5);
  const std::string sampler = cfg.get_or("varsel", "sampler", "geometric");
  const std::string base = cfg.get_or("varsel", "base", "symmetric");
  RwWeights weights;
  if (base == "symmetric") {
    weights.symmetric = true;
  } else if (base == "asymmetric") {
    weights.symmetric = false;
    weights.b_add = cfg.get_double_or("varsel", "b_add", 0.4);
    weights.b_del = cfg.get_double_or("varsel", "b_del", 0.4);
    weights.b_swap = cfg.get_double_or("varsel", "b_swap", 0.2);
  } else {
    throw ConfigError("varsel base must be symmetric or asymmetric");
  }
  const std::string prefix = cfg.get("varsel", "output");
  const int threads = static_cast<int>(cfg.get_long_or(
      "varsel", "threads",
      static_cast<long>(std::min(8u, std::thread::hardware_concurrency()))));

  // data source: simulated design or files
  const bool simulated = cfg.has("varsel", "design");
  std::string design_name;
  long p = 0, m = 0;
  double r2 = 0.0;
  std::string design_file, response_file, design_format;
  if (simulated) {
    design_name = cfg.get("varsel", "design");
    p = cfg.get_long("varsel", "p");
    m = cfg.get_long("varsel", "m");
    r2 = cfg.get_double_or("varsel", "r2", 0.9);
  } else {
    design_file = cfg.get("varsel", "design_file");
    response_file = cfg.get("varsel", "response_file");
    design_format = cfg.get_or("varsel", "design_format", "csv");
  }
  const bool lambda_given = cfg.has("varsel", "lambda");
  const bool omega_given = cfg.has("varsel", "omega");
  double lambda = lambda_given ? cfg.get_double("varsel", "lambda") : 0.0;
  double omega = omega_given ? cfg.get_double("varsel", "omega") : 0.0;
  cfg.validate_consumed();

  // file-based data loads once and runs single replicate chains on it
  auto load_file_data = [&]() -> VSData {
    Vector z;
    {
      std::ifstream zin(response_file);
      if (!zin) throw ConfigError("cannot open response file " + response_file);
      std::vector<double> vals;
      double v;
      while (zin >> v) vals.push_back(v);
      z = Eigen::Map<const Vector>(vals.data(), static_cast<long>(vals.size()));
    }
    if (design_format == "sparse") {
      long mm = 0;
      auto cols = read_sparse_binary(design_file, &mm);
      const long pp = static_cast<long>(cols.size());
      return VSData::from_sparse_binary(
          std::move(cols), mm, z,
          lambda_given ? lambda : default_lambda(mm, pp),
          omega_given ? omega : default_omega(mm, pp));
    }
    std::ifstream din(design_file);
    if (!din) throw ConfigError("cannot open design file " + design_file);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(din, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::vector<double> row;
      std::string tok;
      while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
      rows.push_back(std::move(row));
    }
    const long mm = static_cast<long>(rows.size());
    const long pp = static_cast<long>(rows.front().size());
    Matrix W(mm, pp);
    for (long i = 0; i < mm; ++i)
      for (long j = 0; j < pp; ++j)
        W(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return VSData::from_dense(W, z,
                              lambda_given ? lambda : default_lambda(mm, pp),
                              omega_given ? omega : default_omega(mm, pp));
  };

  std::vector<VarselReplicate> results(static_cast<size_t>(replicates));
  auto run_one = [&](int rep) {
    VarselReplicate& out = results[static_cast<size_t>(rep)];
    out.seed = derive_seed(master_seed, static_cast<std::uint64_t>(rep));
    Model truth;
    VSData data = [&]() {
      if (simulated) {
        SimulatedDesign sim =
            simulate_design(design_from_string(design_name), p, m, r2, out.seed);
        truth = sim.true_model;
        return VSData::from_dense(
            sim.W, sim.z, lambda_given ? lambda : default_lambda(m, p),
            omega_given ? omega : default_omega(m, p));
      }
      return load_file_data();
    }();

    Rng rng = make_rng(out.seed ^ 0x5bd1e995u);
    VsState state = vs_init(data, Model{});
    out.visited.reserve(static_cast<size_t>(iterations));
    long n_accept = 0;
    for (long it = 0; it < iterations; ++it) {
      VsStepResult r;
      if (sampler == "geometric")
        r = vs_geometric_step(data, state, eps, weights, rng);
      else if (sampler == "rw")
        r = vs_rw_step(data, state, weights, rng);
      else
        throw ConfigError("varsel sampler must be geometric or rw");
      n_accept += r.accepted ? 1 : 0;
      const double lp = state.scores.log_post_current;
      out.visited.push_back(state.model);
      out.log_post.push_back(lp);
      out.accepted.push_back(r.accepted ? 1 : 0);
      if (lp > out.best_log_post) {
        out.best_log_post = lp;
        out.best_model = state.model;
      }
      if (out.hit_iteration < 0 && !truth.idx.empty() && state.model == truth)
        out.hit_iteration = it + 1;
    }
    out.best_is_true = !truth.idx.empty() && out.best_model == truth;
    out.acceptance =
        static_cast<double>(n_accept) / static_cast<double>(iterations);
    out.summaries = posterior_summaries(out.visited, out.log_post, data);
  };

  std::mutex error_mutex;
  std::string worker_error;
  auto run_guarded = [&](int rep) {
    try {
      run_one(rep);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (worker_error.empty()) worker_error = e.what();
    }
  };
  if (threads <= 1 || replicates == 1) {
    for (int rep = 0; rep < replicates; ++rep) run_guarded(rep);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        int rep;
        while ((rep = next.fetch_add(1)) < replicates) run_guarded(rep);
      });
    for (auto& th : pool) th.join();
  }
  if (!worker_error.empty()) throw Error("varsel replicate failed: " + worker_error);

  // model trace: replicate, iteration, accepted, log_post, model (1-based)
  {
    std::ofstream out(prefix + "_models.csv");
    out << "replicate,iteration,accepted,log_post,model\n";
    for (int rep = 0; rep < replicates; ++rep) {
      const auto& r = results[static_cast<size_t>(rep)];
      for (size_t it = 0; it < r.visited.size(); ++it) {
        out << rep + 1 << ',' << it + 1 << ','
            << static_cast<int>(r.accepted[it]) << ','
            << format_full(r.log_post[it]) << ',' << r.visited[it].to_string()
            << '\n';
      }
    }
  }
  {
    std::ofstream out(prefix + "_mip.csv");
    out << "replicate,variable,mip,weighted_mip\n";
    for (int rep = 0; rep < replicates; ++rep) {
      const auto& s = results[static_cast<size_t>(rep)].summaries;
      for (Eigen::Index j = 0; j < s.mip.size(); ++j)
        out << rep + 1 << ',' << j + 1 << ',' << format_full(s.mip(j)) << ','
            << format_full(s.weighted_mip(j)) << '\n';
    }
  }
  json summary;
  summary["iterations"] = iterations;
  summary["seed"] = master_seed;
  summary["replicates"] = replicates;
  summary["sampler"] = sampler;
  summary["epsilon"] = eps;
  json reps = json::array();
  std::vector<long> hits;
  int successes = 0;
  for (const auto& r : results) {
    json jr;
    jr["seed"] = r.seed;
    jr["acceptance"] = r.acceptance;
    jr["hit_iteration"] = r.hit_iteration;
    jr["best_is_true"] = r.best_is_true;
    jr["best_model"] = r.best_model.to_string();
    jr["best_log_post"] = r.best_log_post;
    jr["median_model"] = r.summaries.median_model.to_string();
    jr["wam_model"] = r.summaries.wam_model.to_string();
    jr["r2_median"] = r.summaries.r2_median;
    jr["r2_wam"] = r.summaries.r2_wam;
    reps.push_back(jr);
    if (r.hit_iteration > 0 && r.best_is_true) {
      ++successes;
      hits.push_back(r.hit_iteration);
    }
  }
  summary["replicate_results"] = reps;
  if (simulated) {
    summary["success_count"] = successes;
    if (!hits.empty()) {
      std::sort(hits.begin(), hits.end());
      summary["hit_iteration_median"] = hits[hits.size() / 2];
      summary["hit_iteration_min"] = hits.front();
      summary["hit_iteration_max"] = hits.back();
    }
  }
  std::ofstream(prefix + "_summary.json") << summary.dump(2) << "\n";
  log << "varsel: " << replicates << " replicate(s)";
  if (simulated) log << ", " << successes << " hit the true model";
  log << "\n";
  return 0;
}

int run_diagnose(const std::string& trace_path, const std::string& out_prefix,
                 int max_lag, std::ostream& log) {
  const ChainTrace trace = read_trace_csv(trace_path);
  const DiagnosticsReport rep = diagnose(trace, max_lag);
  if (out_prefix.empty()) {
    log << rep.to_text();
  } else {
    std::ofstream(out_prefix + "_diagnostics.txt") << rep.to_text();
    std::ofstream(out_prefix + "_diagnostics.csv") << rep.to_csv();
    log << "wrote " << out_prefix << "_diagnostics.{txt,csv}\n";
  }
  return 0;
}

}  // namespace gmh
