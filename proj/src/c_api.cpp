#include "sgmbo/sgmbo.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <string>

#include "sgmbo/error.hpp"
#include "sgmbo/experiment.hpp"
#include "sgmbo/generators.hpp"
#include "sgmbo/io.hpp"
#include "sgmbo/mbo.hpp"
#include "sgmbo/metrics.hpp"
#include "sgmbo/pipelines.hpp"

struct sgmbo_graph {
  sgmbo::SignedGraph graph;
};

struct sgmbo_labels {
  sgmbo::Assignment labels;
};

struct sgmbo_constraints {
  std::size_t nodes = 0;
  std::size_t k = 0;
  std::vector<sgmbo::Edge> must;
  std::vector<sgmbo::Edge> cannot;
  double lambda_plus = 1.0;
  double lambda_minus = 1.0;
  std::map<std::size_t, std::pair<std::size_t, double>> fidelity;
  std::map<std::size_t, std::pair<std::size_t, double>> avoidance;
  std::map<std::size_t, std::size_t> anchors;
  sgmbo::Composition composition = sgmbo::Composition::Combined;
};

struct sgmbo_result {
  sgmbo::MboResult result;
};

struct sgmbo_image {
  sgmbo::Image image;
};

namespace {

thread_local std::string last_error;

sgmbo_status status_of(sgmbo::ErrorCode code) {
  using sgmbo::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SGMBO_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return SGMBO_DIMENSION_MISMATCH;
    case ErrorCode::LengthMismatch: return SGMBO_LENGTH_MISMATCH;
    case ErrorCode::IsolatedNode: return SGMBO_ISOLATED_NODE;
    case ErrorCode::NoConvergence: return SGMBO_NO_CONVERGENCE;
    case ErrorCode::AllZeroSpectrum: return SGMBO_ALL_ZERO_SPECTRUM;
    case ErrorCode::DegenerateEigenvector: return SGMBO_DEGENERATE_EIGENVECTOR;
    case ErrorCode::EmptyCluster: return SGMBO_EMPTY_CLUSTER;
    case ErrorCode::DegenerateImage: return SGMBO_DEGENERATE_IMAGE;
    case ErrorCode::NonPositivePrice: return SGMBO_NON_POSITIVE_PRICE;
    case ErrorCode::ZeroVarianceRow: return SGMBO_ZERO_VARIANCE_ROW;
    case ErrorCode::EmptyMatrix: return SGMBO_EMPTY_MATRIX;
    case ErrorCode::Io: return SGMBO_IO;
    case ErrorCode::Parse: return SGMBO_PARSE;
  }
  return SGMBO_INTERNAL;
}

sgmbo_status fail(sgmbo_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
sgmbo_status guard(F&& body) {
  try {
    body();
    return SGMBO_OK;
  } catch (const sgmbo::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SGMBO_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SGMBO_INTERNAL, e.what());
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw sgmbo::Error(sgmbo::ErrorCode::InvalidArgument, message);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::size_t> sizes_from(size_t k, const size_t* cluster_sizes) {
  require(k >= 1 && cluster_sizes != nullptr, "cluster sizes are required");
  return std::vector<std::size_t>(cluster_sizes, cluster_sizes + k);
}

void check_link(const sgmbo_constraints* c, size_t i, size_t j, double w) {
  require(c != nullptr, "constraints handle is null");
  require(i < c->nodes && j < c->nodes && i != j, "link endpoints must be distinct nodes in range");
  require(w > 0.0, "link weight must be positive");
}

void check_target(const sgmbo_constraints* c, size_t node, size_t cluster, double w) {
  require(c != nullptr, "constraints handle is null");
  require(node < c->nodes, "node out of range");
  require(cluster >= 1 && cluster <= c->k, "cluster out of range");
  require(w > 0.0, "weight must be positive");
}

sgmbo::ConstraintSet materialize(const sgmbo_constraints& c) {
  sgmbo::ConstraintSet cs;
  if (!c.must.empty()) cs.must_link = sgmbo::SignedGraph::from_triplets(c.nodes, c.must);
  if (!c.cannot.empty()) cs.cannot_link = sgmbo::SignedGraph::from_triplets(c.nodes, c.cannot);
  cs.lambda_plus = c.lambda_plus;
  cs.lambda_minus = c.lambda_minus;
  const auto v = static_cast<Eigen::Index>(c.nodes);
  const auto k = static_cast<Eigen::Index>(c.k);
  if (!c.fidelity.empty()) {
    sgmbo::TargetTerm t{Eigen::MatrixXd::Zero(v, k), Eigen::VectorXd::Zero(v)};
    for (const auto& [node, tw] : c.fidelity) {
      t.target(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(tw.first - 1)) = 1.0;
      t.weights[static_cast<Eigen::Index>(node)] = tw.second;
    }
    cs.fidelity = std::move(t);
  }
  if (!c.avoidance.empty() && c.k > 1) {
    sgmbo::TargetTerm t{Eigen::MatrixXd::Zero(v, k), Eigen::VectorXd::Zero(v)};
    for (const auto& [node, tw] : c.avoidance) {
      const auto row = static_cast<Eigen::Index>(node);
      t.target.row(row).setOnes();
      t.target(row, static_cast<Eigen::Index>(tw.first - 1)) = 0.0;
      t.weights[row] = tw.second;
    }
    cs.avoidance = std::move(t);
  }
  cs.anchors = c.anchors;
  return cs;
}

}  // namespace

extern "C" {

const char* sgmbo_last_error(void) { return last_error.c_str(); }

const char* sgmbo_status_name(sgmbo_status status) {
  switch (status) {
    case SGMBO_OK: return "Ok";
    case SGMBO_INVALID_ARGUMENT: return "InvalidArgument";
    case SGMBO_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SGMBO_LENGTH_MISMATCH: return "LengthMismatch";
    case SGMBO_ISOLATED_NODE: return "IsolatedNode";
    case SGMBO_NO_CONVERGENCE: return "NoConvergence";
    case SGMBO_ALL_ZERO_SPECTRUM: return "AllZeroSpectrum";
    case SGMBO_DEGENERATE_EIGENVECTOR: return "DegenerateEigenvector";
    case SGMBO_EMPTY_CLUSTER: return "EmptyCluster";
    case SGMBO_DEGENERATE_IMAGE: return "DegenerateImage";
    case SGMBO_NON_POSITIVE_PRICE: return "NonPositivePrice";
    case SGMBO_ZERO_VARIANCE_ROW: return "ZeroVarianceRow";
    case SGMBO_EMPTY_MATRIX: return "EmptyMatrix";
    case SGMBO_IO: return "Io";
    case SGMBO_PARSE: return "Parse";
    case SGMBO_INTERNAL: return "Internal";
  }
  return "Unknown";
}

sgmbo_status_class sgmbo_status_classify(sgmbo_status status) {
  switch (status) {
    case SGMBO_OK: return SGMBO_CLASS_OK;
    case SGMBO_INVALID_ARGUMENT: return SGMBO_CLASS_USAGE;
    case SGMBO_NO_CONVERGENCE:
    case SGMBO_ALL_ZERO_SPECTRUM:
    case SGMBO_DEGENERATE_EIGENVECTOR:
    case SGMBO_INTERNAL: return SGMBO_CLASS_NUMERICAL;
    default: return SGMBO_CLASS_DATA;
  }
}

void sgmbo_string_free(char* s) { std::free(s); }

sgmbo_status sgmbo_graph_from_edges(size_t nodes, size_t edges, const size_t* i, const size_t* j, const double* w,
                                    sgmbo_graph** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    require(edges == 0 || (i && j && w), "edge arrays are null");
    std::vector<sgmbo::Edge> list(edges);
    for (size_t e = 0; e < edges; ++e) list[e] = {i[e], j[e], w[e]};
    *out = new sgmbo_graph{sgmbo::SignedGraph::from_triplets(nodes, list)};
  });
}

sgmbo_status sgmbo_graph_read(const char* path, sgmbo_graph** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new sgmbo_graph{sgmbo::io::read_matrix_market(std::string(path))};
  });
}

sgmbo_status sgmbo_graph_write(const sgmbo_graph* g, const char* path, const char* provenance) {
  return guard([&] {
    require(g && path, "null argument");
    sgmbo::io::write_matrix_market(std::string(path), g->graph, provenance ? provenance : "");
  });
}

size_t sgmbo_graph_node_count(const sgmbo_graph* g) { return g ? g->graph.node_count() : 0; }
size_t sgmbo_graph_edge_count(const sgmbo_graph* g) { return g ? g->graph.edge_count() : 0; }
void sgmbo_graph_free(sgmbo_graph* g) { delete g; }

sgmbo_status sgmbo_graph_edges(const sgmbo_graph* g, size_t* i, size_t* j, double* w) {
  return guard([&] {
    require(g != nullptr, "graph handle is null");
    const auto& edges = g->graph.edges();
    require(edges.empty() || (i && j && w), "edge arrays are null");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      i[e] = edges[e].i;
      j[e] = edges[e].j;
      w[e] = edges[e].w;
    }
  });
}

sgmbo_status sgmbo_labels_create(size_t n, const uint32_t* labels, sgmbo_labels** out) {
  return guard([&] {
    require(out && (n == 0 || labels), "null argument");
    sgmbo::Assignment a;
    a.labels.assign(labels, labels + n);
    for (uint32_t l : a.labels) {
      require(l >= 1, "labels must be at least 1");
      a.k = std::max<std::size_t>(a.k, l);
    }
    *out = new sgmbo_labels{std::move(a)};
  });
}

sgmbo_status sgmbo_labels_read(const char* path, sgmbo_labels** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new sgmbo_labels{sgmbo::io::read_labels_csv(std::string(path))};
  });
}

sgmbo_status sgmbo_labels_write(const sgmbo_labels* l, const char* path) {
  return guard([&] {
    require(l && path, "null argument");
    sgmbo::io::write_labels_csv(std::string(path), l->labels);
  });
}

size_t sgmbo_labels_size(const sgmbo_labels* l) { return l ? l->labels.size() : 0; }
size_t sgmbo_labels_cluster_count(const sgmbo_labels* l) { return l ? l->labels.k : 0; }
const uint32_t* sgmbo_labels_data(const sgmbo_labels* l) { return l ? l->labels.labels.data() : nullptr; }
void sgmbo_labels_free(sgmbo_labels* l) { delete l; }

sgmbo_status sgmbo_generate_ssbm(size_t k, const size_t* cluster_sizes, double sparsity, double noise, uint64_t seed,
                                 sgmbo_graph** graph, sgmbo_labels** truth) {
  return guard([&] {
    require(graph && truth, "null argument");
    sgmbo::SsbmParams p;
    p.cluster_sizes = sizes_from(k, cluster_sizes);
    p.sparsity = sparsity;
    p.noise = noise;
    p.seed = seed;
    sgmbo::GeneratedGraph gen = sgmbo::ssbm(p);
    *graph = new sgmbo_graph{std::move(gen.graph)};
    *truth = new sgmbo_labels{gen.truth.labels()};
  });
}

sgmbo_status sgmbo_generate_ba(size_t k, const size_t* cluster_sizes, size_t v0, size_t nu, double noise,
                               uint64_t seed, sgmbo_graph** graph, sgmbo_labels** truth) {
  return guard([&] {
    require(graph && truth, "null argument");
    sgmbo::BaParams p;
    p.cluster_sizes = sizes_from(k, cluster_sizes);
    p.v0 = v0;
    p.nu = nu;
    p.noise = noise;
    p.seed = seed;
    sgmbo::GeneratedGraph gen = sgmbo::signed_ba(p);
    *graph = new sgmbo_graph{std::move(gen.graph)};
    *truth = new sgmbo_labels{gen.truth.labels()};
  });
}

void sgmbo_mbo_params_default(sgmbo_mbo_params* p) {
  if (!p) return;
  const sgmbo::MboParams d;
  *p = {d.d_tau, d.n_tau, d.m, d.eps_stop, d.max_iters, d.seed, d.divide_d_tau ? 1 : 0};
}

sgmbo_status sgmbo_constraints_create(size_t nodes, size_t k, sgmbo_constraints** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    require(nodes >= 1 && k >= 1, "nodes and k must be positive");
    auto* c = new sgmbo_constraints;
    c->nodes = nodes;
    c->k = k;
    *out = c;
  });
}

sgmbo_status sgmbo_constraints_add_must_link(sgmbo_constraints* c, size_t i, size_t j, double w) {
  return guard([&] {
    check_link(c, i, j, w);
    c->must.push_back({i, j, w});
  });
}

sgmbo_status sgmbo_constraints_add_cannot_link(sgmbo_constraints* c, size_t i, size_t j, double w) {
  return guard([&] {
    check_link(c, i, j, w);
    c->cannot.push_back({i, j, w});
  });
}

sgmbo_status sgmbo_constraints_set_tradeoffs(sgmbo_constraints* c, double lambda_plus, double lambda_minus) {
  return guard([&] {
    require(c != nullptr, "constraints handle is null");
    require(lambda_plus > 0.0 && lambda_minus > 0.0, "trade-offs must be positive");
    c->lambda_plus = lambda_plus;
    c->lambda_minus = lambda_minus;
  });
}

sgmbo_status sgmbo_constraints_add_fidelity(sgmbo_constraints* c, size_t node, size_t cluster, double w) {
  return guard([&] {
    check_target(c, node, cluster, w);
    c->fidelity[node] = {cluster, w};
  });
}

sgmbo_status sgmbo_constraints_add_avoidance(sgmbo_constraints* c, size_t node, size_t cluster, double w) {
  return guard([&] {
    check_target(c, node, cluster, w);
    c->avoidance[node] = {cluster, w};
  });
}

sgmbo_status sgmbo_constraints_add_anchor(sgmbo_constraints* c, size_t node, size_t cluster) {
  return guard([&] {
    check_target(c, node, cluster, 1.0);
    c->anchors[node] = cluster;
  });
}

sgmbo_status sgmbo_constraints_set_composition(sgmbo_constraints* c, const char* composition) {
  return guard([&] {
    require(c && composition, "null argument");
    c->composition = sgmbo::parse_composition(composition);
  });
}

sgmbo_status sgmbo_constraints_add_group_links(sgmbo_constraints* c, const uint32_t* groups, double weight,
                                               double keep_fraction, uint64_t seed, int must, int cannot) {
  return guard([&] {
    require(c && groups, "null argument");
    require(weight > 0.0, "link weight must be positive");
    require(keep_fraction >= 0.0 && keep_fraction <= 1.0, "keep_fraction must lie in [0, 1]");
    std::vector<std::size_t> members;
    for (std::size_t p = 0; p < c->nodes; ++p) {
      if (groups[p] != 0) members.push_back(p);
    }
    sgmbo::Rng rng(seed);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::size_t i = members[a];
        const std::size_t j = members[b];
        const bool same = groups[i] == groups[j];
        if ((same && !must) || (!same && !cannot)) continue;
        if (rng.uniform() >= keep_fraction) continue;
        (same ? c->must : c->cannot).push_back({i, j, weight});
      }
    }
  });
}

void sgmbo_constraints_free(sgmbo_constraints* c) { delete c; }

sgmbo_status sgmbo_cluster(const sgmbo_graph* g, const char* laplacian, size_t k, const sgmbo_mbo_params* params,
                           const sgmbo_constraints* constraints, const sgmbo_labels* init, sgmbo_result** out) {
  return guard([&] {
    require(g && laplacian && out, "null argument");
    require(k >= 2, "k must be at least 2");
    sgmbo::MboParams p;
    if (params) {
      p.d_tau = params->d_tau;
      p.n_tau = params->n_tau;
      p.m = params->m;
      p.eps_stop = params->eps_stop;
      p.max_iters = params->max_iters;
      p.seed = params->seed;
      p.divide_d_tau = params->divide_d_tau != 0;
    }
    const sgmbo::LaplacianKind kind = sgmbo::parse_laplacian_kind(laplacian);
    sgmbo::MboRunOptions options;
    std::optional<sgmbo::ConstraintSet> cs;
    if (constraints) {
      require(constraints->nodes == g->graph.node_count() && constraints->k == k,
              "constraints were built for a different graph size or k");
      cs = materialize(*constraints);
      options.composition = constraints->composition;
    }
    std::optional<sgmbo::CharacteristicMatrix> u0;
    if (init) {
      sgmbo::Assignment a = init->labels;
      require(a.size() == g->graph.node_count(), "initial labels have the wrong length");
      require(a.k <= k, "initial labels exceed k");
      a.k = k;
      u0 = sgmbo::CharacteristicMatrix::from_assignment(a);
    }
    auto* r = new sgmbo_result;
    try {
      r->result = sgmbo::run_mbo(g->graph, kind, k, p, cs && !cs->empty() ? &*cs : nullptr, u0 ? &*u0 : nullptr,
                                 options);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

sgmbo_status sgmbo_result_labels(const sgmbo_result* r, sgmbo_labels** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = new sgmbo_labels{r->result.assignment};
  });
}

size_t sgmbo_result_iterations(const sgmbo_result* r) { return r ? r->result.iterations : 0; }
int sgmbo_result_converged(const sgmbo_result* r) { return r && r->result.converged ? 1 : 0; }

sgmbo_status sgmbo_result_write_trace(const sgmbo_result* r, const char* path) {
  return guard([&] {
    require(r && path, "null argument");
    sgmbo::io::write_trace_jsonl(std::string(path), r->result.trace);
  });
}

void sgmbo_result_free(sgmbo_result* r) { delete r; }

sgmbo_status sgmbo_kmeans_spectral(const sgmbo_graph* g, size_t k, uint64_t seed, size_t restarts,
                                   sgmbo_labels** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = new sgmbo_labels{sgmbo::spectral_kmeans(g->graph, k, seed, restarts)};
  });
}

sgmbo_status sgmbo_ari(const sgmbo_labels* pred, const sgmbo_labels* truth, double* out) {
  return guard([&] {
    require(pred && truth && out, "null argument");
    *out = sgmbo::ari(pred->labels, truth->labels);
  });
}

sgmbo_status sgmbo_bnc(const sgmbo_labels* labels, const sgmbo_graph* g, double* out) {
  return guard([&] {
    require(labels && g && out, "null argument");
    *out = sgmbo::bnc_objective(labels->labels, g->graph);
  });
}

sgmbo_status sgmbo_bench_run(const char* spec_json, size_t threads, int override_seed, uint64_t master_seed,
                             char** report_json, char** plot_csv) {
  return guard([&] {
    require(spec_json && report_json && plot_csv, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::exception& e) {
      throw sgmbo::Error(sgmbo::ErrorCode::Parse, std::string("spec is not valid JSON: ") + e.what());
    }
    sgmbo::ExperimentSpec spec = sgmbo::parse_experiment_spec(j);
    if (threads > 0) spec.threads = threads;
    if (override_seed) spec.master_seed = master_seed;
    const sgmbo::SweepReport report = sgmbo::run_sweep(spec);
    char* rep = copy_string(sgmbo::report_json(report).dump(2) + "\n");
    try {
      *plot_csv = copy_string(sgmbo::plot_csv(report));
    } catch (...) {
      std::free(rep);
      throw;
    }
    *report_json = rep;
  });
}

sgmbo_status sgmbo_correlate(const char* prices_path, const char* market_column, sgmbo_graph** out) {
  return guard([&] {
    require(prices_path && out, "null argument");
    const sgmbo::TimeSeriesPanel panel =
        sgmbo::io::read_prices_csv(std::string(prices_path), market_column ? market_column : "");
    Eigen::MatrixXd returns = sgmbo::log_returns(panel.prices);
    if (panel.market) returns = sgmbo::excess_returns(returns, sgmbo::log_returns(Eigen::VectorXd(*panel.market)));
    *out = new sgmbo_graph{sgmbo::pearson_correlation_graph(returns)};
  });
}

sgmbo_status sgmbo_symmetrize(const char* counts_path, sgmbo_graph** out, double* median, size_t* dropped_zeros) {
  return guard([&] {
    require(counts_path && out, "null argument");
    sgmbo::CenteringStats stats;
    sgmbo::SignedGraph g = sgmbo::symmetrize_center(sgmbo::io::read_counts(std::string(counts_path)), &stats);
    if (median) *median = stats.median;
    if (dropped_zeros) *dropped_zeros = stats.dropped_zeros;
    *out = new sgmbo_graph{std::move(g)};
  });
}

sgmbo_status sgmbo_image_read(const char* path, sgmbo_image** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new sgmbo_image{sgmbo::io::read_png(path)};
  });
}

size_t sgmbo_image_width(const sgmbo_image* img) { return img ? img->image.width : 0; }
size_t sgmbo_image_height(const sgmbo_image* img) { return img ? img->image.height : 0; }
void sgmbo_image_free(sgmbo_image* img) { delete img; }

sgmbo_status sgmbo_image_graph(const sgmbo_image* img, double radius, double decay, sgmbo_graph** out) {
  return guard([&] {
    require(img && out, "null argument");
    *out = new sgmbo_graph{sgmbo::image_to_graph(img->image, {radius, decay})};
  });
}

sgmbo_status sgmbo_image_write_segmentation(const sgmbo_image* img, const sgmbo_labels* labels, const char* path) {
  return guard([&] {
    require(img && labels && path, "null argument");
    const sgmbo::Image& src = img->image;
    const sgmbo::Assignment& a = labels->labels;
    if (a.size() != src.pixel_count()) throw sgmbo::Error(sgmbo::ErrorCode::LengthMismatch, "labels do not match the image");
    std::vector<double> sums(3 * (a.k + 1), 0.0);
    std::vector<std::size_t> counts(a.k + 1, 0);
    for (std::size_t p = 0; p < a.size(); ++p) {
      ++counts[a.labels[p]];
      for (std::size_t c = 0; c < 3; ++c) sums[3 * a.labels[p] + c] += src.channel(p, c);
    }
    sgmbo::Image out = src;
    for (std::size_t p = 0; p < a.size(); ++p) {
      const std::uint32_t l = a.labels[p];
      for (std::size_t c = 0; c < 3; ++c) out.rgb[3 * p + c] = sums[3 * l + c] / static_cast<double>(counts[l]);
    }
    sgmbo::io::write_png(path, out);
  });
}

sgmbo_status sgmbo_mask_read(const char* path, size_t width, size_t height, uint32_t** groups, size_t* group_count) {
  return guard([&] {
    require(path && groups && group_count, "null argument");
    const sgmbo::io::RgbaImage mask = sgmbo::io::read_png_rgba(path);
    if (mask.width != width || mask.height != height) {
      throw sgmbo::Error(sgmbo::ErrorCode::DimensionMismatch, "mask size differs from the image");
    }
    const std::size_t n = width * height;
    auto* out = static_cast<uint32_t*>(std::calloc(n == 0 ? 1 : n, sizeof(uint32_t)));
    if (!out) throw std::bad_alloc();
    std::map<std::uint32_t, std::uint32_t> ids;
    for (std::size_t p = 0; p < n; ++p) {
      const std::uint8_t* px = &mask.rgba[4 * p];
      if (px[3] < 128) continue;
      const std::uint32_t color = (std::uint32_t{px[0]} << 16) | (std::uint32_t{px[1]} << 8) | px[2];
      const auto it = ids.emplace(color, static_cast<std::uint32_t>(ids.size() + 1)).first;
      out[p] = it->second;
    }
    *groups = out;
    *group_count = ids.size();
  });
}

void sgmbo_mask_free(uint32_t* groups) { std::free(groups); }

}  // extern "C"
