#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgmbo/graph.hpp"
#include "sgmbo/mbo.hpp"

namespace sgmbo {

/// Planted partition: block labels, one-hot matrix and the implicit block
/// sign matrix S (S_ij = +1 inside a cluster, -1 across).
class GroundTruth {
 public:
  explicit GroundTruth(std::vector<std::size_t> cluster_sizes);
  GroundTruth(Assignment labels);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t cluster_count() const noexcept { return labels_.k; }
  const Assignment& labels() const noexcept { return labels_; }
  CharacteristicMatrix one_hot() const { return CharacteristicMatrix::from_assignment(labels_); }

  /// S_ij for i != j; zero on the diagonal.
  int sign(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0;
    return labels_.labels[i] == labels_.labels[j] ? 1 : -1;
  }
  Eigen::MatrixXd sign_matrix() const;

 private:
  Assignment labels_;
};

GroundTruth ground_truth(const std::vector<std::size_t>& cluster_sizes);

/// Equal sizes summing to v; the first v % k clusters get one extra node.
std::vector<std::size_t> equal_cluster_sizes(std::size_t v, std::size_t k);

struct SsbmParams {
  std::vector<std::size_t> cluster_sizes;
  double sparsity = 1.0;  // lambda in (0, 1]
  double noise = 0.0;     // eta in [0, 1]; the benchmark range is [0, 0.5)
  std::uint64_t seed = 0;
  std::size_t max_redraws = 10;  // redraws when a draw leaves a node isolated
};

struct BaParams {
  std::size_t v0 = 10;
  std::size_t nu = 10;
  std::vector<std::size_t> cluster_sizes;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct GeneratedGraph {
  SignedGraph graph;
  GroundTruth truth;
  std::size_t redraws = 0;  // SSBM only: draws discarded for isolated nodes
};

/// Signed stochastic block model: each pair i < j independently carries
/// S_ij with probability (1 - eta) lambda, -S_ij with probability eta lambda,
/// and no edge otherwise. Draws that leave a node isolated are redrawn with a
/// derived seed up to max_redraws times, then IsolatedNode is raised.
GeneratedGraph ssbm(const SsbmParams& params);

/// Barabasi-Albert skeleton grown from a v0-clique, nu degree-proportional
/// attachments per arrival (without replacement); each edge carries S_ij,
/// flipped with probability eta.
GeneratedGraph signed_ba(const BaParams& params);

/// Unsigned BA skeleton only (edges with weight 1).
SignedGraph ba_skeleton(std::size_t v, std::size_t v0, std::size_t nu, Rng& rng);

}  // namespace sgmbo
