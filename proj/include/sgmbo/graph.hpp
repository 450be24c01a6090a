#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace sgmbo {

struct Edge {
  std::size_t i;  // always i < j
  std::size_t j;
  double w;       // nonzero

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected signed weighted simple graph.
///
/// Stored as a sorted upper-triangular coordinate list: every edge appears
/// once with i < j, there are no self-loops and no explicit zeros. The
/// symmetric matrix is only materialized on request.
class SignedGraph {
 public:
  SignedGraph() = default;
  explicit SignedGraph(std::size_t node_count) : node_count_(node_count) {}

  /// Builds a graph from arbitrary (i, j, w) triplets. Orientation is
  /// normalized, duplicates are summed, resulting zeros are dropped.
  /// Self-loops and out-of-range indices raise InvalidArgument.
  static SignedGraph from_triplets(std::size_t node_count, std::span<const Edge> triplets);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Full symmetric adjacency.
  Eigen::SparseMatrix<double> adjacency() const;
  Eigen::MatrixXd dense_adjacency() const;

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
};

struct DegreeMatrices {
  Eigen::VectorXd d_bar;    // sum of |A_ik|
  Eigen::VectorXd d_plus;   // sum of A+_ik
  Eigen::VectorXd d_minus;  // sum of A-_ik
};

/// Splits A into A+ = max(A, 0) and A- = -min(A, 0); both carry nonnegative
/// weights and A = A+ - A-.
std::pair<SignedGraph, SignedGraph> decompose(const SignedGraph& graph);

/// Entrywise pos - neg on the union of supports.
SignedGraph recombine(const SignedGraph& pos, const SignedGraph& neg);

DegreeMatrices degrees(const SignedGraph& graph);

/// True when every weight is strictly positive.
bool is_unsigned(const SignedGraph& graph);

}  // namespace sgmbo
