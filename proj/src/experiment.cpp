#include "sgmbo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "sgmbo/error.hpp"
#include "sgmbo/io.hpp"
#include "sgmbo/metrics.hpp"

namespace sgmbo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x); }

const char* generator_name(GeneratorType t) {
  switch (t) {
    case GeneratorType::Ssbm: return "ssbm";
    case GeneratorType::BarabasiAlbert: return "ba";
    case GeneratorType::File: return "file";
  }
  return "?";
}

const char* solver_type_name(SolverType t) { return t == SolverType::Mbo ? "mbo" : "kmeans_pp"; }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

// Draws `count` distinct nodes (partial Fisher-Yates), returned sorted.
std::vector<std::size_t> sample_nodes(std::size_t v, std::size_t count, Rng& rng) {
  std::vector<std::size_t> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < count; ++i) std::swap(perm[i], perm[i + rng.index(v - i)]);
  perm.resize(count);
  std::sort(perm.begin(), perm.end());
  return perm;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json point_json(const GridPoint& p) {
  ordered_json j;
  j["lambda"] = p.lambda;
  j["eta"] = p.eta;
  j["k"] = p.k;
  j["alpha"] = p.alpha;
  j["d_tau"] = p.d_tau;
  return j;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

const char* to_string(ConstraintMode mode) {
  switch (mode) {
    case ConstraintMode::None: return "none";
    case ConstraintMode::MustCannot: return "must_cannot";
    case ConstraintMode::FidelityAvoidance: return "fidelity_avoidance";
    case ConstraintMode::Fidelity: return "fidelity";
    case ConstraintMode::Avoidance: return "avoidance";
    case ConstraintMode::Anchors: return "anchors";
  }
  return "?";
}

ConstraintMode parse_constraint_mode(const std::string& name) {
  for (auto m : {ConstraintMode::None, ConstraintMode::MustCannot, ConstraintMode::FidelityAvoidance,
                 ConstraintMode::Fidelity, ConstraintMode::Avoidance, ConstraintMode::Anchors}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown constraint mode '" + name + "'");
}

const char* to_string(Composition composition) {
  switch (composition) {
    case Composition::Combined: return "combined";
    case Composition::MustOnly: return "must_only";
    case Composition::CannotOnly: return "cannot_only";
  }
  return "?";
}

Composition parse_composition(const std::string& name) {
  for (auto c : {Composition::Combined, Composition::MustOnly, Composition::CannotOnly}) {
    if (name == to_string(c)) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown composition '" + name + "'");
}

ConstraintSet reveal_constraints(const GroundTruth& truth, const ConstraintRecipe& recipe, std::uint64_t seed) {
  if (!(recipe.alpha >= 0.0 && recipe.alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  if (!(recipe.magnification > 0.0)) throw Error(ErrorCode::InvalidArgument, "magnification must be positive");
  ConstraintSet cs;
  if (recipe.mode == ConstraintMode::None || recipe.alpha == 0.0) return cs;

  const std::size_t v = truth.node_count();
  const auto k = static_cast<Eigen::Index>(truth.cluster_count());
  const auto& labels = truth.labels().labels;
  Rng rng(seed);

  if (recipe.mode == ConstraintMode::MustCannot) {
    std::vector<Edge> must;
    std::vector<Edge> cannot;
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = i + 1; j < v; ++j) {
        if (rng.uniform() >= recipe.alpha) continue;
        (labels[i] == labels[j] ? must : cannot).push_back({i, j, 1.0});
      }
    }
    if (!must.empty()) cs.must_link = SignedGraph::from_triplets(v, must);
    if (!cannot.empty()) cs.cannot_link = SignedGraph::from_triplets(v, cannot);
    return cs;
  }

  const auto count = static_cast<std::size_t>(std::llround(recipe.alpha * static_cast<double>(v)));
  const std::vector<std::size_t> nodes = sample_nodes(v, count, rng);
  if (nodes.empty()) return cs;

  if (recipe.mode == ConstraintMode::Anchors) {
    for (std::size_t i : nodes) cs.anchors.emplace(i, labels[i]);
    return cs;
  }

  const auto vv = static_cast<Eigen::Index>(v);
  TargetTerm fid{Eigen::MatrixXd::Zero(vv, k), Eigen::VectorXd::Zero(vv)};
  TargetTerm avo{Eigen::MatrixXd::Zero(vv, k), Eigen::VectorXd::Zero(vv)};
  for (std::size_t i : nodes) {
    const auto row = static_cast<Eigen::Index>(i);
    fid.target(row, labels[i] - 1) = 1.0;
    fid.weights[row] = recipe.magnification;
    avo.target.row(row).setOnes();
    avo.target(row, labels[i] - 1) = 0.0;
    avo.weights[row] = k > 1 ? recipe.magnification : 0.0;
  }
  if (recipe.mode != ConstraintMode::Avoidance) cs.fidelity = std::move(fid);
  if (recipe.mode != ConstraintMode::Fidelity && k > 1) cs.avoidance = std::move(avo);
  return cs;
}

void ExperimentSpec::validate() const {
  if (axes.lambda.empty() || axes.eta.empty() || axes.k.empty() || axes.alpha.empty() || axes.d_tau.empty()) {
    throw Error(ErrorCode::InvalidArgument, "every sweep axis needs at least one value");
  }
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (solvers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one solver is required");
  for (double a : axes.alpha) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha values must lie in [0, 1]");
  }
  for (double d : axes.d_tau) {
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "d_tau values must be positive");
  }
  for (std::size_t k : axes.k) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "cluster counts must be at least 2");
  }
  if (generator.type != GeneratorType::File) {
    if (!generator.cluster_sizes.empty()) {
      if (axes.k.size() != 1 || axes.k[0] != generator.cluster_sizes.size()) {
        throw Error(ErrorCode::InvalidArgument, "explicit cluster_sizes fix the k axis to their count");
      }
    } else if (generator.nodes == 0) {
      throw Error(ErrorCode::InvalidArgument, "generator needs nodes or cluster_sizes");
    }
  } else if (generator.graph_path.empty() || generator.labels_path.empty()) {
    throw Error(ErrorCode::InvalidArgument, "file generator needs graph and labels paths");
  }
  std::vector<std::string> names;
  for (const SolverSpec& s : solvers) {
    if (s.name.empty()) throw Error(ErrorCode::InvalidArgument, "solver names must be nonempty");
    if (std::find(names.begin(), names.end(), s.name) != names.end()) {
      throw Error(ErrorCode::InvalidArgument, "duplicate solver name '" + s.name + "'");
    }
    names.push_back(s.name);
  }
}

ExperimentSpec parse_experiment_spec(const json& j) {
  try {
    ExperimentSpec spec;
    if (!j.is_object()) throw Error(ErrorCode::Parse, "experiment spec must be a JSON object");
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      const std::string type = get_or<std::string>(g, "type", "ssbm");
      if (type == "ssbm") {
        spec.generator.type = GeneratorType::Ssbm;
      } else if (type == "ba") {
        spec.generator.type = GeneratorType::BarabasiAlbert;
      } else if (type == "file") {
        spec.generator.type = GeneratorType::File;
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown generator type '" + type + "'");
      }
      spec.generator.nodes = get_or<std::size_t>(g, "nodes", 0);
      spec.generator.cluster_sizes = get_or<std::vector<std::size_t>>(g, "cluster_sizes", {});
      spec.generator.v0 = get_or<std::size_t>(g, "v0", 10);
      spec.generator.nu = get_or<std::size_t>(g, "nu", 10);
      spec.generator.graph_path = get_or<std::string>(g, "graph", "");
      spec.generator.labels_path = get_or<std::string>(g, "labels", "");
    }
    if (j.contains("axes")) {
      const json& a = j.at("axes");
      spec.axes.lambda = get_or<std::vector<double>>(a, "lambda", spec.axes.lambda);
      spec.axes.eta = get_or<std::vector<double>>(a, "eta", spec.axes.eta);
      spec.axes.k = get_or<std::vector<std::size_t>>(a, "k", spec.axes.k);
      spec.axes.alpha = get_or<std::vector<double>>(a, "alpha", spec.axes.alpha);
      spec.axes.d_tau = get_or<std::vector<double>>(a, "d_tau", spec.axes.d_tau);
    }
    const json solvers = j.value("solvers", json::array({json{{"type", "mbo"}}}));
    for (const json& s : solvers) {
      SolverSpec solver;
      const std::string type = get_or<std::string>(s, "type", "mbo");
      if (type == "mbo") {
        solver.type = SolverType::Mbo;
      } else if (type == "kmeans_pp") {
        solver.type = SolverType::KmeansPP;
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown solver type '" + type + "'");
      }
      solver.name = get_or<std::string>(s, "name", type);
      solver.laplacian = parse_laplacian_kind(get_or<std::string>(s, "laplacian", "signed_symmetric"));
      solver.params.n_tau = get_or<std::size_t>(s, "n_tau", solver.params.n_tau);
      solver.params.m = get_or<std::size_t>(s, "m", solver.params.m);
      solver.params.eps_stop = get_or<double>(s, "eps_stop", solver.params.eps_stop);
      solver.params.max_iters = get_or<std::size_t>(s, "max_iters", solver.params.max_iters);
      solver.params.divide_d_tau = get_or<bool>(s, "divide_d_tau", solver.params.divide_d_tau);
      solver.restarts = get_or<std::size_t>(s, "restarts", solver.restarts);
      if (s.contains("constraints")) {
        const json& c = s.at("constraints");
        solver.constraints.mode = parse_constraint_mode(get_or<std::string>(c, "mode", "none"));
        solver.constraints.magnification = get_or<double>(c, "magnification", 30.0);
        solver.constraints.composition = parse_composition(get_or<std::string>(c, "composition", "combined"));
      }
      spec.solvers.push_back(std::move(solver));
    }
    spec.trials = get_or<std::size_t>(j, "trials", spec.trials);
    spec.master_seed = get_or<std::uint64_t>(j, "master_seed", spec.master_seed);
    spec.threads = get_or<std::size_t>(j, "threads", spec.threads);
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("experiment spec: ") + e.what());
  }
}

json to_json(const ExperimentSpec& spec) {
  ordered_json j;
  ordered_json g;
  g["type"] = generator_name(spec.generator.type);
  if (spec.generator.type == GeneratorType::File) {
    g["graph"] = spec.generator.graph_path;
    g["labels"] = spec.generator.labels_path;
  } else {
    g["nodes"] = spec.generator.nodes;
    if (!spec.generator.cluster_sizes.empty()) g["cluster_sizes"] = spec.generator.cluster_sizes;
  }
  if (spec.generator.type == GeneratorType::BarabasiAlbert) {
    g["v0"] = spec.generator.v0;
    g["nu"] = spec.generator.nu;
  }
  j["generator"] = g;
  ordered_json solvers = ordered_json::array();
  for (const SolverSpec& s : spec.solvers) {
    ordered_json o;
    o["name"] = s.name;
    o["type"] = solver_type_name(s.type);
    if (s.type == SolverType::Mbo) {
      o["laplacian"] = std::string(to_string(s.laplacian));
      o["n_tau"] = s.params.n_tau;
      o["m"] = s.params.m;
      o["eps_stop"] = s.params.eps_stop;
      o["max_iters"] = s.params.max_iters;
      o["divide_d_tau"] = s.params.divide_d_tau;
      o["constraints"] = {{"mode", to_string(s.constraints.mode)},
                          {"magnification", s.constraints.magnification},
                          {"composition", to_string(s.constraints.composition)}};
    } else {
      o["restarts"] = s.restarts;
    }
    solvers.push_back(o);
  }
  j["solvers"] = solvers;
  j["axes"] = {{"lambda", spec.axes.lambda},
               {"eta", spec.axes.eta},
               {"k", spec.axes.k},
               {"alpha", spec.axes.alpha},
               {"d_tau", spec.axes.d_tau}};
  j["trials"] = spec.trials;
  j["master_seed"] = spec.master_seed;
  j["threads"] = spec.threads;
  return j;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t c : coords) h = combine_seed(h, c);
  return h;
}

TrialSeeds trial_seeds(std::uint64_t master, const GridPoint& p, std::size_t solver_index, std::size_t trial) {
  TrialSeeds s;
  s.instance = derive_seed(master, {1, bits(p.lambda), bits(p.eta), p.k, trial});
  s.constraints = derive_seed(master, {2, bits(p.lambda), bits(p.eta), p.k, bits(p.alpha), trial});
  s.run = derive_seed(master, {3, bits(p.lambda), bits(p.eta), p.k, bits(p.alpha), bits(p.d_tau), solver_index, trial});
  return s;
}

GeneratedGraph build_instance(const GeneratorSpec& gen, const GridPoint& point, std::uint64_t instance_seed) {
  if (gen.type == GeneratorType::File) {
    GeneratedGraph out{io::read_matrix_market(gen.graph_path), GroundTruth(io::read_labels_csv(gen.labels_path)), 0};
    if (out.truth.node_count() != out.graph.node_count()) {
      throw Error(ErrorCode::LengthMismatch, "labels file does not match the graph size");
    }
    return out;
  }
  const std::vector<std::size_t> sizes =
      gen.cluster_sizes.empty() ? equal_cluster_sizes(gen.nodes, point.k) : gen.cluster_sizes;
  if (gen.type == GeneratorType::Ssbm) {
    SsbmParams p;
    p.cluster_sizes = sizes;
    p.sparsity = point.lambda;
    p.noise = point.eta;
    p.seed = instance_seed;
    return ssbm(p);
  }
  BaParams p;
  p.v0 = gen.v0;
  p.nu = gen.nu;
  p.cluster_sizes = sizes;
  p.noise = point.eta;
  p.seed = instance_seed;
  return signed_ba(p);
}

namespace {

void run_on_instance(const ExperimentSpec& spec, std::size_t solver_index, const GeneratedGraph& inst,
                     TrialRecord& rec) {
  const SolverSpec& solver = spec.solvers[solver_index];
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::size_t k = inst.truth.cluster_count();
    if (solver.type == SolverType::KmeansPP) {
      rec.labels = spectral_kmeans(inst.graph, k, rec.seeds.run, solver.restarts);
      rec.iterations = 0;
      rec.converged = true;
    } else {
      ConstraintRecipe recipe = solver.constraints;
      recipe.alpha = rec.point.alpha;
      const ConstraintSet cs = reveal_constraints(inst.truth, recipe, rec.seeds.constraints);
      MboParams params = solver.params;
      params.d_tau = rec.point.d_tau;
      params.seed = rec.seeds.run;
      MboRunOptions options;
      options.composition = recipe.composition;
      const MboResult result = run_mbo(inst.graph, solver.laplacian, k, params, cs.empty() ? nullptr : &cs, nullptr, options);
      rec.labels = result.assignment;
      rec.iterations = result.iterations;
      rec.converged = result.converged;
    }
    rec.ari = ari(rec.labels, inst.truth.labels());
    rec.labels_hash = labels_hash(rec.labels);
    try {
      rec.bnc = bnc_objective(rec.labels, inst.graph);
    } catch (const Error&) {
      rec.bnc.reset();  // empty output cluster or isolated node: objective undefined
    }
  } catch (const Error& e) {
    rec.status = to_string(e.code());
    rec.message = e.what();
  } catch (const std::exception& e) {
    rec.status = "Internal";
    rec.message = e.what();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TrialRecord run_trial(const ExperimentSpec& spec, std::size_t solver_index, const GridPoint& point, std::size_t trial,
                      const TrialSeeds& seeds) {
  if (solver_index >= spec.solvers.size()) throw Error(ErrorCode::InvalidArgument, "solver index out of range");
  TrialRecord rec;
  rec.point = point;
  rec.solver = spec.solvers[solver_index].name;
  rec.trial = trial;
  rec.seeds = seeds;
  try {
    const GeneratedGraph inst = build_instance(spec.generator, point, seeds.instance);
    rec.redraws = inst.redraws;
    run_on_instance(spec, solver_index, inst, rec);
  } catch (const Error& e) {
    rec.status = to_string(e.code());
    rec.message = e.what();
  }
  return rec;
}

SweepReport run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  SweepReport report;
  report.spec = spec;

  struct InstanceKey {
    double lambda;
    double eta;
    std::size_t k;
    std::size_t trial;
  };
  std::vector<InstanceKey> instances;
  for (double lambda : spec.axes.lambda) {
    for (double eta : spec.axes.eta) {
      for (std::size_t k : spec.axes.k) {
        for (std::size_t t = 0; t < spec.trials; ++t) instances.push_back({lambda, eta, k, t});
      }
    }
  }
  const std::size_t per_instance = spec.axes.alpha.size() * spec.axes.d_tau.size() * spec.solvers.size();
  report.records.resize(instances.size() * per_instance);

  auto work = [&](std::size_t idx) {
    const InstanceKey& key = instances[idx];
    TrialRecord* out = &report.records[idx * per_instance];
    std::optional<GeneratedGraph> inst;
    std::string inst_status;
    std::string inst_message;
    for (double alpha : spec.axes.alpha) {
      for (double d_tau : spec.axes.d_tau) {
        for (std::size_t s = 0; s < spec.solvers.size(); ++s, ++out) {
          const GridPoint point{key.lambda, key.eta, key.k, alpha, d_tau};
          TrialRecord& rec = *out;
          rec.point = point;
          rec.solver = spec.solvers[s].name;
          rec.trial = key.trial;
          rec.seeds = trial_seeds(spec.master_seed, point, s, key.trial);
          if (!inst && inst_status.empty()) {
            try {
              inst = build_instance(spec.generator, point, rec.seeds.instance);
            } catch (const Error& e) {
              inst_status = to_string(e.code());
              inst_message = e.what();
            }
          }
          if (!inst) {
            rec.status = inst_status;
            rec.message = inst_message;
            continue;
          }
          rec.redraws = inst->redraws;
          run_on_instance(spec, s, *inst, rec);
        }
      }
    }
  };

  std::size_t threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  threads = std::min(threads, std::max<std::size_t>(1, instances.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Summaries in axis order: lambda, eta, k, alpha, d_tau, solver.
  for (double lambda : spec.axes.lambda) {
    for (double eta : spec.axes.eta) {
      for (std::size_t k : spec.axes.k) {
        for (double alpha : spec.axes.alpha) {
          for (double d_tau : spec.axes.d_tau) {
            for (const SolverSpec& solver : spec.solvers) {
              PointSummary sum;
              sum.point = {lambda, eta, k, alpha, d_tau};
              sum.solver = solver.name;
              std::vector<double> aris;
              double bnc_total = 0.0;
              std::size_t bnc_count = 0;
              for (const TrialRecord& r : report.records) {
                if (r.solver != solver.name || r.point.lambda != lambda || r.point.eta != eta || r.point.k != k ||
                    r.point.alpha != alpha || r.point.d_tau != d_tau) {
                  continue;
                }
                if (!r.ari) {
                  ++sum.n_failed;
                  continue;
                }
                aris.push_back(*r.ari);
                if (r.bnc) {
                  bnc_total += *r.bnc;
                  ++bnc_count;
                }
              }
              sum.n_trials = aris.size();
              if (!aris.empty()) {
                const double n = static_cast<double>(aris.size());
                sum.mean_ari = std::accumulate(aris.begin(), aris.end(), 0.0) / n;
                double ss = 0.0;
                for (double a : aris) ss += (a - sum.mean_ari) * (a - sum.mean_ari);
                sum.sd_ari = aris.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
                sum.stderr_ari = sum.sd_ari / std::sqrt(n);
              }
              if (bnc_count > 0) sum.mean_bnc = bnc_total / static_cast<double>(bnc_count);
              report.summaries.push_back(sum);
            }
          }
        }
      }
    }
  }
  return report;
}

ordered_json report_json(const SweepReport& report, bool include_timing) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["spec"] = to_json(report.spec);
  if (!include_timing) j["spec"].erase("threads");
  j["conventions"] = {
      {"seed_derivation", "splitmix64 fold of master_seed with (stream tag, grid coordinates as IEEE-754 bits, "
                          "solver index, trial)"},
      {"kmeans_embedding", "bottom-K eigenvectors of signed_symmetric"},
      {"must_cannot_stacking", "additive"},
      {"alpha_nodes", "round(alpha * V) nodes without replacement"},
      {"alpha_pairs", "each unordered pair independently with probability alpha"},
      {"stderr", "sample standard deviation / sqrt(n_trials)"},
      {"bnc", "null when an output cluster is empty"}};

  ordered_json records = ordered_json::array();
  for (const TrialRecord& r : report.records) {
    ordered_json o = point_json(r.point);
    o["solver"] = r.solver;
    o["trial"] = r.trial;
    o["seeds"] = {{"instance", r.seeds.instance}, {"constraints", r.seeds.constraints}, {"run", r.seeds.run}};
    o["status"] = r.status;
    if (!r.message.empty()) o["message"] = r.message;
    o["ari"] = r.ari ? ordered_json(*r.ari) : ordered_json(nullptr);
    o["bnc"] = r.bnc ? ordered_json(*r.bnc) : ordered_json(nullptr);
    o["iterations"] = r.iterations;
    o["converged"] = r.converged;
    o["redraws"] = r.redraws;
    o["labels_hash"] = hex64(r.labels_hash);
    if (include_timing) o["wall_ms"] = r.wall_ms;
    records.push_back(o);
  }
  j["records"] = records;

  ordered_json summary = ordered_json::array();
  for (const PointSummary& s : report.summaries) {
    ordered_json o = point_json(s.point);
    o["solver"] = s.solver;
    o["n_trials"] = s.n_trials;
    o["n_failed"] = s.n_failed;
    o["mean_ari"] = s.mean_ari;
    o["stderr_ari"] = s.stderr_ari;
    o["sd_ari"] = s.sd_ari;
    o["mean_bnc"] = s.mean_bnc ? ordered_json(*s.mean_bnc) : ordered_json(nullptr);
    summary.push_back(o);
  }
  j["summary"] = summary;
  return j;
}

std::string plot_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "lambda,eta,alpha,k,d_tau,solver,mean_ari,stderr_ari,n_trials\n";
  for (const PointSummary& s : report.summaries) {
    out << format_double(s.point.lambda) << ',' << format_double(s.point.eta) << ',' << format_double(s.point.alpha)
        << ',' << s.point.k << ',' << format_double(s.point.d_tau) << ',' << s.solver << ','
        << format_double(s.mean_ari) << ',' << format_double(s.stderr_ari) << ',' << s.n_trials << '\n';
  }
  return out.str();
}

std::uint64_t labels_hash(const Assignment& labels) {
  // FNV-1a over the little-endian label bytes.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t l : labels.labels) {
    for (int b = 0; b < 4; ++b) {
      h ^= (l >> (8 * b)) & 0xFFu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace sgmbo
