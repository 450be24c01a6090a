#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgmbo/sgmbo.h"

namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 1;
constexpr int kData = 2;

struct Failure {
  int exit_code;
  std::string message;
};

bool verbose() {
  const char* level = std::getenv("SGMBO_LOG");
  return level && (std::string(level) == "debug" || std::string(level) == "info");
}

void log(const std::string& msg) {
  if (verbose()) std::cerr << "sgmbo: " << msg << '\n';
}

void check(sgmbo_status s) {
  if (s != SGMBO_OK) {
    throw Failure{static_cast<int>(sgmbo_status_classify(s)),
                  std::string(sgmbo_status_name(s)) + ": " + sgmbo_last_error()};
  }
}

void usage_error(const std::string& msg) { throw Failure{kUsage, msg}; }

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Graph = Handle<sgmbo_graph, sgmbo_graph_free>;
using Labels = Handle<sgmbo_labels, sgmbo_labels_free>;
using Constraints = Handle<sgmbo_constraints, sgmbo_constraints_free>;
using Result = Handle<sgmbo_result, sgmbo_result_free>;
using ImageHandle = Handle<sgmbo_image, sgmbo_image_free>;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 0;
  std::string out_dir = ".";
};

std::string out_path(const Globals& g, const std::string& name) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw Failure{kData, "cannot create output directory " + g.out_dir + ": " + ec.message()};
  return (fs::path(g.out_dir) / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kData, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{kData, "cannot write " + path};
}

// Partial "node_id,label" lists (1-based) for anchors and fidelity targets.
std::vector<std::pair<std::size_t, std::size_t>> read_node_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kData, "cannot open " + path};
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("node_id", 0) == 0) continue;
    std::istringstream ss(line);
    long long node = 0;
    long long label = 0;
    char comma = 0;
    if (!(ss >> node >> comma >> label) || comma != ',' || node < 1 || label < 1) {
      throw Failure{kData, "bad row in " + path + ": " + line};
    }
    rows.emplace_back(static_cast<std::size_t>(node - 1), static_cast<std::size_t>(label));
  }
  return rows;
}

void add_link_file(sgmbo_constraints* c, const std::string& path, bool must) {
  Graph g;
  check(sgmbo_graph_read(path.c_str(), g.out()));
  const std::size_t m = sgmbo_graph_edge_count(g.get());
  std::vector<std::size_t> i(m), j(m);
  std::vector<double> w(m);
  check(sgmbo_graph_edges(g.get(), i.data(), j.data(), w.data()));
  for (std::size_t e = 0; e < m; ++e) {
    check(must ? sgmbo_constraints_add_must_link(c, i[e], j[e], w[e])
               : sgmbo_constraints_add_cannot_link(c, i[e], j[e], w[e]));
  }
}

struct MboFlags {
  std::string laplacian = "signed_symmetric";
  double d_tau = 0.1;
  std::size_t n_tau = 3;
  std::size_t m = 0;
  double eps_stop = 1e-7;
  std::size_t max_iters = 300;
  bool undivided = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--laplacian", laplacian, "signed, signed_random_walk, signed_symmetric, ...")
        ->capture_default_str();
    cmd->add_option("--d-tau", d_tau, "diffusion time step")->capture_default_str();
    cmd->add_option("--n-tau", n_tau, "diffusion repetitions")->capture_default_str();
    cmd->add_option("--m", m, "basis size (0 = k)")->capture_default_str();
    cmd->add_option("--eps-stop", eps_stop, "stop tolerance")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "iteration cap")->capture_default_str();
    cmd->add_flag("--undivided-d-tau", undivided, "use (I + d_tau Lambda)^-1 per repetition");
  }

  sgmbo_mbo_params params(std::uint64_t seed) const {
    sgmbo_mbo_params p;
    sgmbo_mbo_params_default(&p);
    p.d_tau = d_tau;
    p.n_tau = n_tau;
    p.m = m;
    p.eps_stop = eps_stop;
    p.max_iters = max_iters;
    p.seed = seed;
    p.divide_d_tau = undivided ? 0 : 1;
    return p;
  }
};

std::vector<std::size_t> cluster_sizes(std::size_t nodes, std::size_t k, const std::vector<std::size_t>& explicit_sizes) {
  if (!explicit_sizes.empty()) return explicit_sizes;
  if (k < 1 || nodes < k) usage_error("need 1 <= k <= nodes");
  std::vector<std::size_t> sizes(k, nodes / k);
  for (std::size_t c = 0; c < nodes % k; ++c) ++sizes[c];
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed graph clustering with MBO threshold dynamics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--threads", g.threads, "worker threads for bench (0 = spec value)");
  app.add_option("--out-dir", g.out_dir, "output directory")->capture_default_str();
  app.fallthrough();

  // generate
  auto* gen = app.add_subcommand("generate", "synthetic signed graph and ground truth");
  std::string model = "ssbm";
  std::size_t nodes = 0;
  std::size_t gen_k = 2;
  std::vector<std::size_t> sizes;
  double sparsity = 1.0;
  double noise = 0.0;
  std::size_t v0 = 10;
  std::size_t nu = 10;
  std::string name = "graph";
  gen->add_option("--model", model, "ssbm or ba")->check(CLI::IsMember({"ssbm", "ba"}))->capture_default_str();
  gen->add_option("--nodes", nodes, "node count V");
  gen->add_option("--k", gen_k, "cluster count")->capture_default_str();
  gen->add_option("--sizes", sizes, "explicit cluster sizes (overrides --nodes/--k)");
  gen->add_option("--sparsity", sparsity, "edge probability lambda (ssbm)")->capture_default_str();
  gen->add_option("--noise", noise, "sign flip probability eta")->capture_default_str();
  gen->add_option("--v0", v0, "initial clique size (ba)")->capture_default_str();
  gen->add_option("--nu", nu, "attachments per new node (ba)")->capture_default_str();
  gen->add_option("--name", name, "output file stem")->capture_default_str();

  // cluster
  auto* clu = app.add_subcommand("cluster", "MBO clustering of a graph file");
  std::string graph_path;
  std::size_t k = 0;
  std::string init_path, truth_path, anchors_path, fidelity_path, avoid_path, must_path, cannot_path;
  double magnification = 30.0;
  double lambda_plus = 1.0;
  double lambda_minus = 1.0;
  std::string composition = "combined";
  MboFlags mbo;
  clu->add_option("--graph", graph_path, "Matrix Market adjacency")->required();
  clu->add_option("--k", k, "cluster count (>= 2)")->required();
  mbo.add(clu);
  clu->add_option("--init", init_path, "initial labels CSV");
  clu->add_option("--truth", truth_path, "ground-truth labels CSV; prints the ARI");
  clu->add_option("--anchors", anchors_path, "node_id,label rows fixed during the run");
  clu->add_option("--fidelity", fidelity_path, "node_id,label rows attracting the run");
  clu->add_option("--avoidance", avoid_path, "node_id,label rows: avoid all other clusters");
  clu->add_option("--magnification", magnification, "fidelity/avoidance weight")->capture_default_str();
  clu->add_option("--must-links", must_path, "Matrix Market must-link weights");
  clu->add_option("--cannot-links", cannot_path, "Matrix Market cannot-link weights");
  clu->add_option("--lambda-plus", lambda_plus, "must-link trade-off")->capture_default_str();
  clu->add_option("--lambda-minus", lambda_minus, "cannot-link trade-off")->capture_default_str();
  clu->add_option("--composition", composition, "combined, must_only or cannot_only")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "experiment sweep from a JSON spec");
  std::string spec_path;
  bench->add_option("--spec", spec_path, "experiment spec JSON")->required();

  // segment
  auto* seg = app.add_subcommand("segment", "image segmentation");
  std::string image_path, mask_path;
  std::size_t seg_k = 4;
  double radius = 5.0;
  double decay = 14.0;
  double link_weight = 2.0;
  double link_fraction = 0.5;
  MboFlags seg_mbo;
  seg->add_option("--image", image_path, "input PNG")->required();
  seg->add_option("--k", seg_k, "cluster count")->capture_default_str();
  seg->add_option("--radius", radius, "pixel neighborhood radius")->capture_default_str();
  seg->add_option("--decay", decay, "color decay b")->capture_default_str();
  seg->add_option("--mask", mask_path, "scribble PNG: one color per group");
  seg->add_option("--link-weight", link_weight, "must/cannot-link weight")->capture_default_str();
  seg->add_option("--link-fraction", link_fraction, "fraction of scribble links kept")->capture_default_str();
  seg_mbo.add(seg);

  // correlate
  auto* cor = app.add_subcommand("correlate", "prices CSV to a correlation graph");
  std::string prices_path, market;
  cor->add_option("--prices", prices_path, "prices CSV")->required();
  cor->add_option("--market", market, "market column for excess returns");
  cor->add_option("--name", name, "output file stem")->capture_default_str();

  // symmetrize
  auto* sym = app.add_subcommand("symmetrize", "directed counts to a centered signed graph");
  std::string counts_path;
  sym->add_option("--counts", counts_path, "Matrix Market general counts")->required();
  sym->add_option("--name", name, "output file stem")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) {
      const std::vector<std::size_t> cs = cluster_sizes(nodes, gen_k, sizes);
      Graph graph;
      Labels truth;
      if (model == "ssbm") {
        check(sgmbo_generate_ssbm(cs.size(), cs.data(), sparsity, noise, g.seed, graph.out(), truth.out()));
      } else {
        check(sgmbo_generate_ba(cs.size(), cs.data(), v0, nu, noise, g.seed, graph.out(), truth.out()));
      }
      std::ostringstream prov;
      prov << model << " sparsity=" << sparsity << " noise=" << noise << " seed=" << g.seed;
      const std::string mtx = out_path(g, name + ".mtx");
      const std::string labels = out_path(g, name + "_labels.csv");
      check(sgmbo_graph_write(graph.get(), mtx.c_str(), prov.str().c_str()));
      check(sgmbo_labels_write(truth.get(), labels.c_str()));
      std::cout << "{\"graph\":\"" << mtx << "\",\"labels\":\"" << labels << "\",\"nodes\":"
                << sgmbo_graph_node_count(graph.get()) << ",\"edges\":" << sgmbo_graph_edge_count(graph.get())
                << "}\n";
    } else if (*clu) {
      if (k < 2) usage_error("--k must be at least 2");
      Graph graph;
      check(sgmbo_graph_read(graph_path.c_str(), graph.out()));
      const std::size_t v = sgmbo_graph_node_count(graph.get());
      Constraints cons;
      const bool any_constraints = !anchors_path.empty() || !fidelity_path.empty() || !avoid_path.empty() ||
                                   !must_path.empty() || !cannot_path.empty();
      if (any_constraints) {
        check(sgmbo_constraints_create(v, k, cons.out()));
        check(sgmbo_constraints_set_tradeoffs(cons.get(), lambda_plus, lambda_minus));
        check(sgmbo_constraints_set_composition(cons.get(), composition.c_str()));
        if (!anchors_path.empty()) {
          for (auto [node, label] : read_node_labels(anchors_path)) {
            check(sgmbo_constraints_add_anchor(cons.get(), node, label));
          }
        }
        if (!fidelity_path.empty()) {
          for (auto [node, label] : read_node_labels(fidelity_path)) {
            check(sgmbo_constraints_add_fidelity(cons.get(), node, label, magnification));
          }
        }
        if (!avoid_path.empty()) {
          for (auto [node, label] : read_node_labels(avoid_path)) {
            check(sgmbo_constraints_add_avoidance(cons.get(), node, label, magnification));
          }
        }
        if (!must_path.empty()) add_link_file(cons.get(), must_path, true);
        if (!cannot_path.empty()) add_link_file(cons.get(), cannot_path, false);
      }
      Labels init;
      if (!init_path.empty()) check(sgmbo_labels_read(init_path.c_str(), init.out()));
      const sgmbo_mbo_params params = mbo.params(g.seed);
      Result result;
      log("clustering " + std::to_string(v) + " nodes into " + std::to_string(k) + " clusters");
      check(sgmbo_cluster(graph.get(), mbo.laplacian.c_str(), k, &params, cons.get(), init.get(), result.out()));
      Labels labels;
      check(sgmbo_result_labels(result.get(), labels.out()));
      const std::string labels_out = out_path(g, "labels.csv");
      const std::string trace_out = out_path(g, "trace.jsonl");
      check(sgmbo_labels_write(labels.get(), labels_out.c_str()));
      check(sgmbo_result_write_trace(result.get(), trace_out.c_str()));
      std::cout << "{\"labels\":\"" << labels_out << "\",\"trace\":\"" << trace_out
                << "\",\"iterations\":" << sgmbo_result_iterations(result.get())
                << ",\"converged\":" << (sgmbo_result_converged(result.get()) ? "true" : "false");
      if (!truth_path.empty()) {
        Labels truth;
        check(sgmbo_labels_read(truth_path.c_str(), truth.out()));
        double score = 0.0;
        check(sgmbo_ari(labels.get(), truth.get(), &score));
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", score);
        std::cout << ",\"ari\":" << buf;
      }
      std::cout << "}\n";
    } else if (*bench) {
      const std::string spec = read_file(spec_path);
      char* report = nullptr;
      char* csv = nullptr;
      check(sgmbo_bench_run(spec.c_str(), g.threads, g.seed_set ? 1 : 0, g.seed, &report, &csv));
      const std::string report_text(report);
      const std::string csv_text(csv);
      sgmbo_string_free(report);
      sgmbo_string_free(csv);
      const std::string report_out = out_path(g, "report.json");
      const std::string csv_out = out_path(g, "ari_curves.csv");
      write_file(report_out, report_text);
      write_file(csv_out, csv_text);
      std::cout << "{\"report\":\"" << report_out << "\",\"plot\":\"" << csv_out << "\"}\n";
    } else if (*seg) {
      if (seg_k < 2) usage_error("--k must be at least 2");
      ImageHandle img;
      check(sgmbo_image_read(image_path.c_str(), img.out()));
      Graph graph;
      check(sgmbo_image_graph(img.get(), radius, decay, graph.out()));
      const std::size_t v = sgmbo_graph_node_count(graph.get());
      log("image graph: " + std::to_string(v) + " nodes, " + std::to_string(sgmbo_graph_edge_count(graph.get())) +
          " edges");
      const sgmbo_mbo_params params = seg_mbo.params(g.seed);
      Result base;
      check(sgmbo_cluster(graph.get(), seg_mbo.laplacian.c_str(), seg_k, &params, nullptr, nullptr, base.out()));
      Labels base_labels;
      check(sgmbo_result_labels(base.get(), base_labels.out()));
      const std::string base_png = out_path(g, "segmentation.png");
      check(sgmbo_image_write_segmentation(img.get(), base_labels.get(), base_png.c_str()));
      check(sgmbo_labels_write(base_labels.get(), out_path(g, "labels.csv").c_str()));
      std::cout << "{\"segmentation\":\"" << base_png << "\"";

      if (!mask_path.empty()) {
        uint32_t* groups = nullptr;
        std::size_t group_count = 0;
        check(sgmbo_mask_read(mask_path.c_str(), sgmbo_image_width(img.get()), sgmbo_image_height(img.get()),
                              &groups, &group_count));
        std::vector<uint32_t> group_vec(groups, groups + v);
        sgmbo_mask_free(groups);
        if (group_count == 0) throw Failure{kData, "mask has no opaque pixels"};
        // Constrained passes start from the unconstrained result.
        for (const char* pass : {"must", "cannot"}) {
          const bool must = std::string(pass) == "must";
          Constraints cons;
          check(sgmbo_constraints_create(v, seg_k, cons.out()));
          check(sgmbo_constraints_set_composition(cons.get(), must ? "must_only" : "cannot_only"));
          check(sgmbo_constraints_add_group_links(cons.get(), group_vec.data(), link_weight, link_fraction,
                                                  g.seed + (must ? 1 : 2), must ? 1 : 0, must ? 0 : 1));
          Result res;
          check(sgmbo_cluster(graph.get(), seg_mbo.laplacian.c_str(), seg_k, &params, cons.get(), base_labels.get(),
                              res.out()));
          Labels labels;
          check(sgmbo_result_labels(res.get(), labels.out()));
          const std::string png = out_path(g, std::string("segmentation_") + pass + ".png");
          check(sgmbo_image_write_segmentation(img.get(), labels.get(), png.c_str()));
          std::cout << ",\"" << pass << "\":\"" << png << "\"";
        }
      }
      std::cout << "}\n";
    } else if (*cor) {
      Graph graph;
      check(sgmbo_correlate(prices_path.c_str(), market.empty() ? nullptr : market.c_str(), graph.out()));
      const std::string mtx = out_path(g, name + ".mtx");
      check(sgmbo_graph_write(graph.get(), mtx.c_str(),
                              ("pearson correlation of log returns from " + prices_path).c_str()));
      std::cout << "{\"graph\":\"" << mtx << "\",\"nodes\":" << sgmbo_graph_node_count(graph.get()) << "}\n";
    } else if (*sym) {
      Graph graph;
      double median = 0.0;
      std::size_t dropped = 0;
      check(sgmbo_symmetrize(counts_path.c_str(), graph.out(), &median, &dropped));
      const std::string mtx = out_path(g, name + ".mtx");
      check(sgmbo_graph_write(graph.get(), mtx.c_str(), ("median-centered counts from " + counts_path).c_str()));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", median);
      std::cout << "{\"graph\":\"" << mtx << "\",\"median\":" << buf << ",\"dropped_zeros\":" << dropped << "}\n";
    }
  } catch (const Failure& f) {
    std::cerr << "sgmbo: " << f.message << '\n';
    return f.exit_code;
  }
  return 0;
}
