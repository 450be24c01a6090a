#include "sgmbo/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

namespace {

void check_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "cluster_sizes must be nonempty");
  for (std::size_t s : sizes) {
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "cluster sizes must be positive");
  }
}

Assignment block_labels(const std::vector<std::size_t>& sizes) {
  check_sizes(sizes);
  Assignment a;
  a.k = sizes.size();
  for (std::size_t c = 0; c < sizes.size(); ++c) a.labels.insert(a.labels.end(), sizes[c], static_cast<std::uint32_t>(c + 1));
  return a;
}

}  // namespace

GroundTruth::GroundTruth(std::vector<std::size_t> cluster_sizes) : labels_(block_labels(cluster_sizes)) {}

GroundTruth::GroundTruth(Assignment labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_.labels[i] < 1 || labels_.labels[i] > labels_.k) {
      throw Error(ErrorCode::InvalidArgument, "ground-truth label out of range", i);
    }
  }
}

Eigen::MatrixXd GroundTruth::sign_matrix() const {
  const auto n = static_cast<Eigen::Index>(node_count());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = sign(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return s;
}

GroundTruth ground_truth(const std::vector<std::size_t>& cluster_sizes) { return GroundTruth(cluster_sizes); }

std::vector<std::size_t> equal_cluster_sizes(std::size_t v, std::size_t k) {
  if (k == 0 || k > v) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= v");
  std::vector<std::size_t> sizes(k, v / k);
  for (std::size_t c = 0; c < v % k; ++c) ++sizes[c];
  return sizes;
}

GeneratedGraph ssbm(const SsbmParams& params) {
  if (!(params.sparsity > 0.0 && params.sparsity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sparsity must lie in (0, 1]");
  }
  if (!(params.noise >= 0.0 && params.noise <= 1.0)) throw Error(ErrorCode::InvalidArgument, "noise must lie in [0, 1]");
  GroundTruth truth(params.cluster_sizes);
  const std::size_t v = truth.node_count();
  const double p_keep = (1.0 - params.noise) * params.sparsity;

  for (std::size_t attempt = 0; attempt <= params.max_redraws; ++attempt) {
    Rng rng(attempt == 0 ? params.seed : combine_seed(params.seed, attempt));
    std::vector<Edge> edges;
    std::vector<bool> touched(v, false);
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = i + 1; j < v; ++j) {
        const double r = rng.uniform();
        if (r >= params.sparsity) continue;
        const double s = truth.sign(i, j);
        edges.push_back({i, j, r < p_keep ? s : -s});
        touched[i] = touched[j] = true;
      }
    }
    if (v < 2 || std::find(touched.begin(), touched.end(), false) == touched.end()) {
      return {SignedGraph::from_triplets(v, edges), std::move(truth), attempt};
    }
  }
  throw Error(ErrorCode::IsolatedNode,
              "SSBM draw left an isolated node after " + std::to_string(params.max_redraws) + " redraws");
}

SignedGraph ba_skeleton(std::size_t v, std::size_t v0, std::size_t nu, Rng& rng) {
  if (v0 < 2 || v0 > v) throw Error(ErrorCode::InvalidArgument, "BA requires 2 <= v0 <= V");
  if (nu == 0 || nu > v0) throw Error(ErrorCode::InvalidArgument, "BA requires 1 <= nu <= v0");

  std::vector<Edge> edges;
  std::vector<double> degree(v, 0.0);
  for (std::size_t i = 0; i < v0; ++i) {
    for (std::size_t j = i + 1; j < v0; ++j) edges.push_back({i, j, 1.0});
    degree[i] = static_cast<double>(v0 - 1);
  }

  std::vector<std::size_t> chosen;
  std::vector<bool> taken(v, false);
  for (std::size_t t = v0; t < v; ++t) {
    chosen.clear();
    double total = 0.0;
    for (std::size_t i = 0; i < t; ++i) total += degree[i];
    for (std::size_t draw = 0; draw < nu; ++draw) {
      // Sequential degree-proportional sampling over nodes not yet chosen.
      double r = rng.uniform() * total;
      std::size_t pick = t;
      for (std::size_t i = 0; i < t; ++i) {
        if (taken[i]) continue;
        pick = i;
        r -= degree[i];
        if (r < 0.0) break;
      }
      taken[pick] = true;
      total -= degree[pick];
      chosen.push_back(pick);
    }
    for (std::size_t target : chosen) {
      taken[target] = false;
      edges.push_back({target, t, 1.0});
      degree[target] += 1.0;
    }
    degree[t] = static_cast<double>(nu);
  }
  return SignedGraph::from_triplets(v, edges);
}

GeneratedGraph signed_ba(const BaParams& params) {
  if (!(params.noise >= 0.0 && params.noise <= 1.0)) throw Error(ErrorCode::InvalidArgument, "noise must lie in [0, 1]");
  GroundTruth truth(params.cluster_sizes);
  Rng rng(params.seed);
  const SignedGraph skeleton = ba_skeleton(truth.node_count(), params.v0, params.nu, rng);
  std::vector<Edge> edges;
  edges.reserve(skeleton.edge_count());
  for (const Edge& e : skeleton.edges()) {
    const double s = truth.sign(e.i, e.j);
    edges.push_back({e.i, e.j, rng.uniform() < params.noise ? -s : s});
  }
  return {SignedGraph::from_triplets(truth.node_count(), edges), std::move(truth), 0};
}

}  // namespace sgmbo
