#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgmbo/graph.hpp"
#include "sgmbo/mbo.hpp"

namespace sgmbo {

struct ContingencyTable {
  std::vector<std::vector<std::uint64_t>> counts;  // rows: first partition, cols: second
  std::vector<std::uint64_t> row_sums;
  std::vector<std::uint64_t> col_sums;
  std::uint64_t total = 0;
};

/// Cross-tabulation over the labels that actually occur. Raises LengthMismatch.
ContingencyTable contingency_table(const Assignment& a, const Assignment& b);

/// Adjusted Rand index. Pair counts are accumulated in exact integer
/// arithmetic, so the value is symmetric and relabeling-invariant bit for bit.
/// Two single-cluster partitions score 1.
double ari(const Assignment& pred, const Assignment& truth);

/// Balanced normalized cut: sum_c x_c^T (D+ - A) x_c / x_c^T D_bar x_c.
/// Raises EmptyCluster(c) and IsolatedNode(i).
double bnc_objective(const Assignment& assign, const SignedGraph& graph);

/// Balanced ratio cut: same numerator over x_c^T x_c.
double bratio_objective(const Assignment& assign, const SignedGraph& graph);

struct KmeansResult {
  Assignment assignment;
  double wcss = 0.0;
  std::size_t best_restart = 0;
};

/// Lloyd's k-means with D^2-weighted seeding on the rows of `points`;
/// best of `restarts` runs by within-cluster sum of squares (ties go to the
/// lowest restart index).
KmeansResult kmeans_pp(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                       std::size_t restarts = 10, std::size_t max_iters = 300);

/// The comparison baseline: k-means++ on the k bottom eigenvectors of the
/// signed symmetric Laplacian.
Assignment spectral_kmeans(const SignedGraph& graph, std::size_t k, std::uint64_t seed, std::size_t restarts = 10);

}  // namespace sgmbo
