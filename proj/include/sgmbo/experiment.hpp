#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgmbo/generators.hpp"
#include "sgmbo/mbo.hpp"

namespace sgmbo {

enum class ConstraintMode { None, MustCannot, FidelityAvoidance, Fidelity, Avoidance, Anchors };

const char* to_string(ConstraintMode mode);
ConstraintMode parse_constraint_mode(const std::string& name);
const char* to_string(Composition composition);
Composition parse_composition(const std::string& name);

struct ConstraintRecipe {
  ConstraintMode mode = ConstraintMode::None;
  double alpha = 0.0;            // fraction of ground truth revealed
  double magnification = 30.0;   // fidelity/avoidance weight
  Composition composition = Composition::Combined;
};

/// must_cannot: each unordered pair is revealed independently with
/// probability alpha, S = +1 into M and S = -1 into C, weight 1.
/// fidelity/avoidance/anchors: round(alpha V) nodes drawn without replacement.
/// Avoidance rows are the revealed one-hot rows times (1 - I).
ConstraintSet reveal_constraints(const GroundTruth& truth, const ConstraintRecipe& recipe, std::uint64_t seed);

enum class GeneratorType { Ssbm, BarabasiAlbert, File };

struct GeneratorSpec {
  GeneratorType type = GeneratorType::Ssbm;
  std::size_t nodes = 0;
  std::vector<std::size_t> cluster_sizes;  // overrides equal split when set; fixes K
  std::size_t v0 = 10;
  std::size_t nu = 10;
  std::string graph_path;   // File
  std::string labels_path;  // File
};

enum class SolverType { Mbo, KmeansPP };

struct SolverSpec {
  std::string name;
  SolverType type = SolverType::Mbo;
  LaplacianKind laplacian = LaplacianKind::SignedSymmetric;
  MboParams params;  // d_tau and seed are taken from the grid
  ConstraintRecipe constraints;
  std::size_t restarts = 10;  // k-means++
};

struct SweepAxes {
  std::vector<double> lambda{1.0};
  std::vector<double> eta{0.0};
  std::vector<std::size_t> k{2};
  std::vector<double> alpha{0.0};
  std::vector<double> d_tau{0.1};
};

struct ExperimentSpec {
  GeneratorSpec generator;
  std::vector<SolverSpec> solvers;
  SweepAxes axes;
  std::size_t trials = 20;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

ExperimentSpec parse_experiment_spec(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);

struct GridPoint {
  double lambda = 0.0;
  double eta = 0.0;
  std::size_t k = 0;
  double alpha = 0.0;
  double d_tau = 0.0;
};

/// Sub-seeds: the instance seed depends on (lambda, eta, k, trial); the
/// constraint seed adds alpha; the run seed adds alpha, d_tau and the solver.
struct TrialSeeds {
  std::uint64_t instance = 0;
  std::uint64_t constraints = 0;
  std::uint64_t run = 0;
};

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);
TrialSeeds trial_seeds(std::uint64_t master, const GridPoint& point, std::size_t solver_index, std::size_t trial);

struct TrialRecord {
  GridPoint point;
  std::string solver;
  std::size_t trial = 0;
  TrialSeeds seeds;
  std::string status = "ok";  // or an error code name
  std::string message;
  std::optional<double> ari;
  std::optional<double> bnc;
  std::size_t iterations = 0;
  bool converged = true;
  std::size_t redraws = 0;
  std::uint64_t labels_hash = 0;
  double wall_ms = 0.0;
  Assignment labels;  // kept in memory only
};

struct PointSummary {
  GridPoint point;
  std::string solver;
  std::size_t n_trials = 0;  // successful trials
  std::size_t n_failed = 0;
  double mean_ari = 0.0;
  double stderr_ari = 0.0;
  double sd_ari = 0.0;
  std::optional<double> mean_bnc;
};

struct SweepReport {
  ExperimentSpec spec;
  std::vector<TrialRecord> records;
  std::vector<PointSummary> summaries;
};

inline constexpr int kReportSchemaVersion = 1;

/// The instance a trial clusters, built from its instance seed.
GeneratedGraph build_instance(const GeneratorSpec& gen, const GridPoint& point, std::uint64_t instance_seed);

/// Runs one solver on one instance with explicit sub-seeds.
TrialRecord run_trial(const ExperimentSpec& spec, std::size_t solver_index, const GridPoint& point,
                      std::size_t trial, const TrialSeeds& seeds);

/// Full grid. Result order and contents do not depend on spec.threads.
SweepReport run_sweep(const ExperimentSpec& spec);

/// Without timing, execution details (wall_ms, threads) are omitted and the
/// output is a pure function of the spec.
nlohmann::ordered_json report_json(const SweepReport& report, bool include_timing = true);
std::string plot_csv(const SweepReport& report);

std::uint64_t labels_hash(const Assignment& labels);

}  // namespace sgmbo
