#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sgmbo/sgmbo.h"

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sgmbo_capi_" + std::to_string(::getpid()) + "_" + name)).string();
}

struct Instance {
  sgmbo_graph* graph = nullptr;
  sgmbo_labels* truth = nullptr;
  ~Instance() {
    sgmbo_graph_free(graph);
    sgmbo_labels_free(truth);
  }
};

}  // namespace

TEST_CASE("status names and classes") {
  CHECK(std::string(sgmbo_status_name(SGMBO_OK)) == "Ok");
  CHECK(sgmbo_status_classify(SGMBO_OK) == SGMBO_CLASS_OK);
  CHECK(sgmbo_status_classify(SGMBO_INVALID_ARGUMENT) == SGMBO_CLASS_USAGE);
  CHECK(sgmbo_status_classify(SGMBO_PARSE) == SGMBO_CLASS_DATA);
  CHECK(sgmbo_status_classify(SGMBO_ISOLATED_NODE) == SGMBO_CLASS_DATA);
  CHECK(sgmbo_status_classify(SGMBO_NO_CONVERGENCE) == SGMBO_CLASS_NUMERICAL);
  CHECK(sgmbo_status_classify(SGMBO_DEGENERATE_EIGENVECTOR) == SGMBO_CLASS_NUMERICAL);
}

TEST_CASE("graph handles") {
  const size_t i[] = {0, 2, 1};
  const size_t j[] = {1, 1, 0};
  const double w[] = {1.0, -2.0, 0.5};
  sgmbo_graph* g = nullptr;
  REQUIRE(sgmbo_graph_from_edges(3, 3, i, j, w, &g) == SGMBO_OK);
  CHECK(sgmbo_graph_node_count(g) == 3);
  CHECK(sgmbo_graph_edge_count(g) == 2);  // (0,1) merged
  std::vector<size_t> ei(2), ej(2);
  std::vector<double> ew(2);
  REQUIRE(sgmbo_graph_edges(g, ei.data(), ej.data(), ew.data()) == SGMBO_OK);
  CHECK(ew[0] == 1.5);
  CHECK(ei[1] == 1);
  CHECK(ej[1] == 2);

  const std::string path = temp_file("g.mtx");
  REQUIRE(sgmbo_graph_write(g, path.c_str(), "capi") == SGMBO_OK);
  sgmbo_graph* back = nullptr;
  REQUIRE(sgmbo_graph_read(path.c_str(), &back) == SGMBO_OK);
  CHECK(sgmbo_graph_edge_count(back) == 2);
  sgmbo_graph_free(back);
  sgmbo_graph_free(g);
  std::remove(path.c_str());

  const size_t loop_i[] = {1};
  const size_t loop_j[] = {1};
  const double loop_w[] = {1.0};
  sgmbo_graph* bad = nullptr;
  CHECK(sgmbo_graph_from_edges(3, 1, loop_i, loop_j, loop_w, &bad) != SGMBO_OK);
  CHECK(bad == nullptr);
  CHECK(std::strlen(sgmbo_last_error()) > 0);
  CHECK(sgmbo_graph_read("/nonexistent/file.mtx", &bad) == SGMBO_IO);
}

TEST_CASE("generate, cluster and score through the C API") {
  Instance inst;
  const size_t sizes[] = {30, 30};
  REQUIRE(sgmbo_generate_ssbm(2, sizes, 0.3, 0.0, 11, &inst.graph, &inst.truth) == SGMBO_OK);
  CHECK(sgmbo_labels_size(inst.truth) == 60);
  CHECK(sgmbo_labels_cluster_count(inst.truth) == 2);

  sgmbo_mbo_params p;
  sgmbo_mbo_params_default(&p);
  CHECK(p.d_tau == 0.1);
  CHECK(p.n_tau == 3);
  CHECK(p.max_iters == 300);
  sgmbo_result* r = nullptr;
  REQUIRE(sgmbo_cluster(inst.graph, "signed", 2, &p, nullptr, nullptr, &r) == SGMBO_OK);
  sgmbo_labels* out = nullptr;
  REQUIRE(sgmbo_result_labels(r, &out) == SGMBO_OK);
  double score = 0;
  REQUIRE(sgmbo_ari(out, inst.truth, &score) == SGMBO_OK);
  CHECK(score == 1.0);
  CHECK(sgmbo_result_iterations(r) >= 1);
  double bnc = -1;
  REQUIRE(sgmbo_bnc(out, inst.graph, &bnc) == SGMBO_OK);
  CHECK(bnc >= 0.0);

  const std::string trace = temp_file("trace.jsonl");
  REQUIRE(sgmbo_result_write_trace(r, trace.c_str()) == SGMBO_OK);
  std::ifstream in(trace);
  std::string line;
  CHECK(std::getline(in, line));
  CHECK(line.find("\"iter\"") != std::string::npos);
  std::remove(trace.c_str());

  sgmbo_labels* km = nullptr;
  REQUIRE(sgmbo_kmeans_spectral(inst.graph, 2, 3, 5, &km) == SGMBO_OK);
  REQUIRE(sgmbo_ari(km, inst.truth, &score) == SGMBO_OK);
  CHECK(score == 1.0);

  sgmbo_result* fail = nullptr;
  CHECK(sgmbo_cluster(inst.graph, "signed", 1, &p, nullptr, nullptr, &fail) == SGMBO_INVALID_ARGUMENT);
  CHECK(sgmbo_cluster(inst.graph, "bogus", 2, &p, nullptr, nullptr, &fail) == SGMBO_INVALID_ARGUMENT);
  CHECK(fail == nullptr);

  sgmbo_labels_free(km);
  sgmbo_labels_free(out);
  sgmbo_result_free(r);
}

TEST_CASE("constraints through the C API") {
  Instance inst;
  const size_t sizes[] = {20, 20, 20};
  REQUIRE(sgmbo_generate_ssbm(3, sizes, 0.3, 0.45, 5, &inst.graph, &inst.truth) == SGMBO_OK);
  const uint32_t* truth = sgmbo_labels_data(inst.truth);

  sgmbo_constraints* c = nullptr;
  REQUIRE(sgmbo_constraints_create(60, 3, &c) == SGMBO_OK);
  for (size_t i = 0; i < 60; ++i) REQUIRE(sgmbo_constraints_add_anchor(c, i, truth[i]) == SGMBO_OK);
  CHECK(sgmbo_constraints_add_anchor(c, 0, 4) == SGMBO_INVALID_ARGUMENT);
  CHECK(sgmbo_constraints_add_must_link(c, 3, 3, 1.0) != SGMBO_OK);
  CHECK(sgmbo_constraints_set_composition(c, "sideways") == SGMBO_INVALID_ARGUMENT);

  sgmbo_mbo_params p;
  sgmbo_mbo_params_default(&p);
  sgmbo_result* r = nullptr;
  REQUIRE(sgmbo_cluster(inst.graph, "sym", 3, &p, c, nullptr, &r) == SGMBO_OK);
  sgmbo_labels* out = nullptr;
  REQUIRE(sgmbo_result_labels(r, &out) == SGMBO_OK);
  double score = 0;
  sgmbo_ari(out, inst.truth, &score);
  CHECK(score == 1.0);
  sgmbo_labels_free(out);
  sgmbo_result_free(r);
  sgmbo_constraints_free(c);

  REQUIRE(sgmbo_constraints_create(60, 3, &c) == SGMBO_OK);
  REQUIRE(sgmbo_constraints_add_group_links(c, truth, 2.0, 0.5, 1, 1, 1) == SGMBO_OK);
  REQUIRE(sgmbo_constraints_add_fidelity(c, 0, truth[0], 30.0) == SGMBO_OK);
  REQUIRE(sgmbo_constraints_add_avoidance(c, 1, truth[1], 30.0) == SGMBO_OK);
  REQUIRE(sgmbo_constraints_set_composition(c, "cannot_only") == SGMBO_OK);
  REQUIRE(sgmbo_cluster(inst.graph, "sym", 3, &p, c, nullptr, &r) == SGMBO_OK);
  sgmbo_result_free(r);
  sgmbo_constraints_free(c);
}

TEST_CASE("labels handles") {
  const uint32_t l[] = {1, 2, 2, 3};
  sgmbo_labels* labels = nullptr;
  REQUIRE(sgmbo_labels_create(4, l, &labels) == SGMBO_OK);
  CHECK(sgmbo_labels_cluster_count(labels) == 3);
  const std::string path = temp_file("labels.csv");
  REQUIRE(sgmbo_labels_write(labels, path.c_str()) == SGMBO_OK);
  sgmbo_labels* back = nullptr;
  REQUIRE(sgmbo_labels_read(path.c_str(), &back) == SGMBO_OK);
  CHECK(std::memcmp(sgmbo_labels_data(back), l, sizeof(l)) == 0);
  sgmbo_labels_free(back);
  sgmbo_labels_free(labels);
  std::remove(path.c_str());
  const uint32_t zero[] = {0, 1};
  CHECK(sgmbo_labels_create(2, zero, &labels) == SGMBO_INVALID_ARGUMENT);
}

TEST_CASE("bench through the C API") {
  const char* spec = R"({"generator": {"type": "ssbm", "nodes": 60},
    "solvers": [{"name": "m", "type": "mbo"}],
    "axes": {"lambda": [0.3], "eta": [0.0, 0.2], "k": [2]}, "trials": 2, "master_seed": 3})";
  char* report = nullptr;
  char* csv = nullptr;
  REQUIRE(sgmbo_bench_run(spec, 1, 0, 0, &report, &csv) == SGMBO_OK);
  CHECK(std::string(report).find("\"schema_version\": 1") != std::string::npos);
  CHECK(std::string(csv).rfind("lambda,eta,alpha,k,d_tau,solver", 0) == 0);
  char* report2 = nullptr;
  char* csv2 = nullptr;
  REQUIRE(sgmbo_bench_run(spec, 2, 1, 3, &report2, &csv2) == SGMBO_OK);
  CHECK(std::string(csv) == std::string(csv2));
  sgmbo_string_free(report);
  sgmbo_string_free(csv);
  sgmbo_string_free(report2);
  sgmbo_string_free(csv2);
  CHECK(sgmbo_bench_run("{not json", 1, 0, 0, &report, &csv) == SGMBO_PARSE);
}

TEST_CASE("correlate and symmetrize through the C API") {
  const std::string prices = temp_file("prices.csv");
  {
    std::ofstream out(prices);
    out << "date,A,B,C,MKT\n";
    double a = 10, b = 20, c = 30, m = 100;
    for (int t = 0; t < 30; ++t) {
      const double s = std::sin(t * 0.7) * 0.02;
      a *= std::exp(s + 0.001 * (t % 3));
      b *= std::exp(s);
      c *= std::exp(-s + 0.002 * (t % 2));
      m *= std::exp(0.5 * s);
      out << "d" << t << "," << a << "," << b << "," << c << "," << m << "\n";
    }
  }
  sgmbo_graph* g = nullptr;
  REQUIRE(sgmbo_correlate(prices.c_str(), "MKT", &g) == SGMBO_OK);
  CHECK(sgmbo_graph_node_count(g) == 3);
  CHECK(sgmbo_graph_edge_count(g) == 3);
  sgmbo_graph_free(g);
  REQUIRE(sgmbo_correlate(prices.c_str(), nullptr, &g) == SGMBO_OK);
  CHECK(sgmbo_graph_node_count(g) == 4);
  sgmbo_graph_free(g);
  std::remove(prices.c_str());

  const std::string counts = temp_file("counts.mtx");
  {
    std::ofstream out(counts);
    out << "%%MatrixMarket matrix coordinate integer general\n3 3 3\n1 2 2\n2 3 5\n3 2 1\n";
  }
  double median = 0;
  size_t dropped = 0;
  REQUIRE(sgmbo_symmetrize(counts.c_str(), &g, &median, &dropped) == SGMBO_OK);
  CHECK(median == 4.0);
  CHECK(dropped == 0);
  CHECK(sgmbo_graph_edge_count(g) == 2);
  sgmbo_graph_free(g);
  std::remove(counts.c_str());
}
