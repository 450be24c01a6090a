#include "helpers.hpp"
#include "schema_check.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sgmbo/experiment.hpp"
#include "sgmbo/metrics.hpp"

using namespace sgmbo;

namespace {

nlohmann::json small_spec_json() {
  return nlohmann::json::parse(R"({
    "generator": {"type": "ssbm", "nodes": 90},
    "solvers": [
      {"name": "mbo_sym", "type": "mbo", "laplacian": "signed_symmetric"},
      {"name": "kmeans", "type": "kmeans_pp", "restarts": 3},
      {"name": "mbo_anchor", "type": "mbo", "constraints": {"mode": "anchors"}}
    ],
    "axes": {"lambda": [0.2], "eta": [0.1, 0.3], "k": [3], "alpha": [0.0, 0.2], "d_tau": [0.1]},
    "trials": 3,
    "master_seed": 77,
    "threads": 1
  })");
}

}  // namespace

TEST_CASE("reveal_constraints with alpha zero reveals nothing") {
  const GroundTruth truth({20, 20, 20});
  for (auto mode : {ConstraintMode::MustCannot, ConstraintMode::FidelityAvoidance, ConstraintMode::Fidelity,
                    ConstraintMode::Avoidance, ConstraintMode::Anchors}) {
    const ConstraintSet cs = reveal_constraints(truth, ConstraintRecipe{mode, 0.0}, 5);
    CHECK(cs.anchors.empty());
    CHECK((!cs.must_link || cs.must_link->edge_count() == 0));
    CHECK((!cs.cannot_link || cs.cannot_link->edge_count() == 0));
    CHECK((!cs.fidelity || cs.fidelity->weights.isZero()));
    CHECK((!cs.avoidance || cs.avoidance->weights.isZero()));
  }
}

TEST_CASE("reveal_constraints node modes") {
  const GroundTruth truth({30, 30, 40});
  const ConstraintSet all = reveal_constraints(truth, ConstraintRecipe{ConstraintMode::Anchors, 1.0}, 1);
  REQUIRE(all.anchors.size() == 100);
  for (const auto& [node, c] : all.anchors) CHECK(c == truth.labels().labels[node]);

  const ConstraintSet fa =
      reveal_constraints(truth, ConstraintRecipe{ConstraintMode::FidelityAvoidance, 0.25, 30.0}, 2);
  REQUIRE(fa.fidelity);
  REQUIRE(fa.avoidance);
  std::size_t revealed = 0;
  for (Eigen::Index i = 0; i < 100; ++i) {
    if (fa.fidelity->weights[i] == 0.0) {
      CHECK(fa.fidelity->target.row(i).isZero());
      continue;
    }
    ++revealed;
    CHECK(fa.fidelity->weights[i] == 30.0);
    const Eigen::RowVectorXd hot = truth.one_hot().values().row(i);
    CHECK(fa.fidelity->target.row(i) == hot);
    CHECK(fa.avoidance->target.row(i) == (Eigen::RowVectorXd::Ones(3) - hot));
    CHECK(fa.avoidance->weights[i] == 30.0);
  }
  CHECK(revealed == 25);
  CHECK_NOTHROW(fa.validate(100, 3));
}

TEST_CASE("reveal_constraints pair mode") {
  const GroundTruth truth(equal_cluster_sizes(1200, 5));
  const double alpha = 0.01;
  const ConstraintSet cs = reveal_constraints(truth, ConstraintRecipe{ConstraintMode::MustCannot, alpha}, 3);
  REQUIRE(cs.must_link);
  REQUIRE(cs.cannot_link);
  for (const Edge& e : cs.must_link->edges()) {
    CHECK(truth.sign(e.i, e.j) == 1);
    CHECK(e.w == 1.0);
  }
  for (const Edge& e : cs.cannot_link->edges()) CHECK(truth.sign(e.i, e.j) == -1);
  const double same = 5 * 240.0 * 239.0 / 2.0;
  const double cross = 1200.0 * 1199.0 / 2.0 - same;
  const auto within = [&](double count, double pairs) {
    return std::abs(count - alpha * pairs) < 3 * std::sqrt(pairs * alpha * (1 - alpha));
  };
  CHECK(within(static_cast<double>(cs.must_link->edge_count()), same));
  CHECK(within(static_cast<double>(cs.cannot_link->edge_count()), cross));
}

TEST_CASE("sub-seeds") {
  GridPoint p{0.1, 0.2, 5, 0.3, 0.1};
  const TrialSeeds a = trial_seeds(9, p, 0, 4);
  CHECK(a.instance == trial_seeds(9, p, 1, 4).instance);  // solvers share the instance
  CHECK(a.run != trial_seeds(9, p, 1, 4).run);
  GridPoint q = p;
  q.alpha = 0.5;
  CHECK(a.instance == trial_seeds(9, q, 0, 4).instance);  // alpha does not change the graph
  CHECK(a.constraints != trial_seeds(9, q, 0, 4).constraints);
  GridPoint r = p;
  r.d_tau = 0.3;
  CHECK(a.constraints == trial_seeds(9, r, 0, 4).constraints);
  CHECK(a.instance != trial_seeds(9, p, 0, 5).instance);
  CHECK(a.instance != trial_seeds(10, p, 0, 4).instance);
  std::set<std::uint64_t> distinct;
  for (std::uint64_t t = 0; t < 1000; ++t) distinct.insert(derive_seed(1, {t}));
  CHECK(distinct.size() == 1000);
}

TEST_CASE("spec parsing") {
  const ExperimentSpec spec = parse_experiment_spec(small_spec_json());
  CHECK(spec.solvers.size() == 3);
  CHECK(spec.solvers[1].type == SolverType::KmeansPP);
  CHECK(spec.solvers[2].constraints.mode == ConstraintMode::Anchors);
  CHECK(spec.axes.eta == std::vector<double>{0.1, 0.3});
  CHECK(parse_experiment_spec(to_json(spec)).axes.alpha == spec.axes.alpha);

  auto bad = small_spec_json();
  bad["axes"]["k"] = {1};
  CHECK_ERROR_CODE(parse_experiment_spec(bad), ErrorCode::InvalidArgument);
  bad = small_spec_json();
  bad["solvers"][0]["type"] = "spectral_magic";
  CHECK_ERROR_CODE(parse_experiment_spec(bad), ErrorCode::InvalidArgument);
  bad = small_spec_json();
  bad["trials"] = "many";
  CHECK_ERROR_CODE(parse_experiment_spec(bad), ErrorCode::Parse);
  bad = small_spec_json();
  bad["solvers"][1]["name"] = "mbo_sym";
  CHECK_ERROR_CODE(parse_experiment_spec(bad), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(parse_experiment_spec(nlohmann::json::array()), ErrorCode::Parse);
}

TEST_CASE("sweep output is deterministic and thread-count independent") {
  ExperimentSpec spec = parse_experiment_spec(small_spec_json());
  const SweepReport one = run_sweep(spec);
  spec.threads = 3;
  const SweepReport three = run_sweep(spec);
  spec.threads = 1;
  const SweepReport again = run_sweep(spec);
  const std::string a = report_json(one, false).dump();
  CHECK(a == report_json(three, false).dump());
  CHECK(a == report_json(again, false).dump());
  CHECK(plot_csv(one) == plot_csv(three));
  // 2 eta x 2 alpha x 3 solvers x 3 trials.
  CHECK(one.records.size() == 36);
  CHECK(one.summaries.size() == 12);
}

TEST_CASE("a trial re-run from its recorded seeds is bitwise identical") {
  const ExperimentSpec spec = parse_experiment_spec(small_spec_json());
  const SweepReport report = run_sweep(spec);
  for (const TrialRecord& r : report.records) {
    std::size_t solver = 0;
    while (spec.solvers[solver].name != r.solver) ++solver;
    const TrialRecord again = run_trial(spec, solver, r.point, r.trial, r.seeds);
    CHECK(again.labels == r.labels);
    CHECK(again.labels_hash == r.labels_hash);
    CHECK(again.labels_hash == labels_hash(r.labels));
  }
}

TEST_CASE("report matches the published schema") {
  const SweepReport report = run_sweep(parse_experiment_spec(small_spec_json()));
  std::ifstream in(std::string(SGMBO_SOURCE_DIR) + "/schemas/report.schema.json");
  REQUIRE(in.good());
  const auto schema = nlohmann::json::parse(in);
  for (bool timing : {true, false}) {
    std::vector<std::string> errors;
    testing::validate_schema(nlohmann::json::parse(report_json(report, timing).dump()), schema, "$", errors);
    for (const auto& e : errors) FAIL_CHECK(e);
  }
  const std::string csv = plot_csv(report);
  CHECK(csv.rfind("lambda,eta,alpha,k,d_tau,solver,mean_ari,stderr_ari,n_trials\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("summary statistics") {
  const SweepReport report = run_sweep(parse_experiment_spec(small_spec_json()));
  for (const PointSummary& s : report.summaries) {
    std::vector<double> v;
    for (const TrialRecord& r : report.records) {
      if (r.solver == s.solver && r.point.eta == s.point.eta && r.point.alpha == s.point.alpha && r.ari) v.push_back(*r.ari);
    }
    REQUIRE(v.size() == s.n_trials);
    double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
    CHECK(std::abs(s.mean_ari - mean) < 1e-12);
    CHECK(std::abs(s.sd_ari - sd) < 1e-12);
    CHECK(std::abs(s.stderr_ari - sd / std::sqrt(double(v.size()))) < 1e-12);
  }
}

TEST_CASE("anchors help more as alpha grows") {
  auto j = small_spec_json();
  j["generator"]["nodes"] = 150;
  j["solvers"] = nlohmann::json::parse(R"([{"name": "a", "type": "mbo", "constraints": {"mode": "anchors"}}])");
  j["axes"]["eta"] = {0.3};
  j["axes"]["alpha"] = {0.0, 0.5, 0.95};
  j["trials"] = 6;
  const SweepReport report = run_sweep(parse_experiment_spec(j));
  REQUIRE(report.summaries.size() == 3);
  CHECK(report.summaries[1].mean_ari >= report.summaries[0].mean_ari - 2 * report.summaries[0].stderr_ari);
  CHECK(report.summaries[2].mean_ari >= report.summaries[1].mean_ari);
  CHECK(report.summaries[2].mean_ari > 0.9);
}

TEST_CASE("MBO accuracy falls with noise") {
  auto j = small_spec_json();
  j["generator"]["nodes"] = 150;
  j["solvers"] = nlohmann::json::parse(R"([{"name": "m", "type": "mbo", "laplacian": "signed"}])");
  j["axes"]["k"] = {2};
  j["axes"]["alpha"] = {0.0};
  j["axes"]["eta"] = {0.05, 0.45};
  j["trials"] = 6;
  const SweepReport report = run_sweep(parse_experiment_spec(j));
  CHECK(report.summaries[0].mean_ari > report.summaries[1].mean_ari + 0.3);
}
