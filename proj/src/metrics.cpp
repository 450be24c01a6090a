#include "sgmbo/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "sgmbo/error.hpp"
#include "sgmbo/laplacian.hpp"
#include "sgmbo/rng.hpp"
#include "sgmbo/spectral.hpp"

namespace sgmbo {

namespace {

using Int = __int128;

Int choose2(std::uint64_t n) { return static_cast<Int>(n) * static_cast<Int>(n == 0 ? 0 : n - 1) / 2; }

std::vector<double> cluster_sums(const Assignment& assign, const Eigen::VectorXd& per_node) {
  std::vector<double> sums(assign.k, 0.0);
  for (std::size_t i = 0; i < assign.size(); ++i) sums[assign.labels[i] - 1] += per_node[static_cast<Eigen::Index>(i)];
  return sums;
}

// sum_c x_c^T (D+ - A) x_c, with the per-cluster denominator supplied by the caller.
double balanced_cut(const Assignment& assign, const SignedGraph& graph, const std::vector<double>& denominators) {
  const DegreeMatrices d = degrees(graph);
  std::vector<double> numer = cluster_sums(assign, d.d_plus);
  for (const Edge& e : graph.edges()) {
    const std::uint32_t c = assign.labels[e.i];
    if (c == assign.labels[e.j]) numer[c - 1] -= 2.0 * e.w;
  }
  double total = 0.0;
  for (std::size_t c = 0; c < assign.k; ++c) total += numer[c] / denominators[c];
  return total;
}

void check_assignment(const Assignment& assign, const SignedGraph& graph) {
  if (assign.size() != graph.node_count()) throw Error(ErrorCode::LengthMismatch, "assignment length differs from V");
  std::vector<bool> seen(assign.k, false);
  for (std::size_t i = 0; i < assign.size(); ++i) {
    if (assign.labels[i] < 1 || assign.labels[i] > assign.k) throw Error(ErrorCode::InvalidArgument, "label out of range", i);
    seen[assign.labels[i] - 1] = true;
  }
  for (std::size_t c = 0; c < assign.k; ++c) {
    if (!seen[c]) throw Error(ErrorCode::EmptyCluster, "cluster " + std::to_string(c + 1) + " is empty", c + 1);
  }
}

}  // namespace

ContingencyTable contingency_table(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "partitions have different lengths");
  std::map<std::uint32_t, std::size_t> rows;
  std::map<std::uint32_t, std::size_t> cols;
  for (std::uint32_t l : a.labels) rows.emplace(l, 0);
  for (std::uint32_t l : b.labels) cols.emplace(l, 0);
  std::size_t idx = 0;
  for (auto& [label, slot] : rows) slot = idx++;
  idx = 0;
  for (auto& [label, slot] : cols) slot = idx++;

  ContingencyTable t;
  t.counts.assign(rows.size(), std::vector<std::uint64_t>(cols.size(), 0));
  t.row_sums.assign(rows.size(), 0);
  t.col_sums.assign(cols.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t r = rows[a.labels[i]];
    const std::size_t c = cols[b.labels[i]];
    ++t.counts[r][c];
    ++t.row_sums[r];
    ++t.col_sums[c];
  }
  t.total = a.size();
  return t;
}

double ari(const Assignment& pred, const Assignment& truth) {
  const ContingencyTable t = contingency_table(pred, truth);
  Int sum_p = 0;
  for (const auto& row : t.counts) {
    for (std::uint64_t p : row) sum_p += choose2(p);
  }
  Int sum_a = 0;
  for (std::uint64_t a : t.row_sums) sum_a += choose2(a);
  Int sum_b = 0;
  for (std::uint64_t b : t.col_sums) sum_b += choose2(b);
  const Int pairs = choose2(t.total);

  // Numerator and denominator both scaled by 2 * C(V, 2).
  const Int num = 2 * (sum_p * pairs - sum_a * sum_b);
  const Int den = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b;
  if (den == 0) return num == 0 ? 1.0 : 0.0;
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double bnc_objective(const Assignment& assign, const SignedGraph& graph) {
  check_assignment(assign, graph);
  const DegreeMatrices d = degrees(graph);
  for (Eigen::Index i = 0; i < d.d_bar.size(); ++i) {
    if (d.d_bar[i] <= 0.0) throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(i) + " is isolated", i);
  }
  return balanced_cut(assign, graph, cluster_sums(assign, d.d_bar));
}

double bratio_objective(const Assignment& assign, const SignedGraph& graph) {
  check_assignment(assign, graph);
  std::vector<double> sizes(assign.k, 0.0);
  for (std::uint32_t l : assign.labels) sizes[l - 1] += 1.0;
  return balanced_cut(assign, graph, sizes);
}

KmeansResult kmeans_pp(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                       std::size_t max_iters) {
  const Eigen::Index n = points.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  if (k == 0 || kk > n) throw Error(ErrorCode::InvalidArgument, "k-means needs 1 <= k <= number of points");
  if (restarts == 0) throw Error(ErrorCode::InvalidArgument, "restarts must be positive");

  KmeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(combine_seed(seed, r));
    Eigen::MatrixXd centers(kk, points.cols());

    // D^2 seeding.
    centers.row(0) = points.row(static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd d2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (Eigen::Index c = 1; c < kk; ++c) {
      const double total = d2.sum();
      Eigen::Index pick = 0;
      if (total > 0.0) {
        double u = rng.uniform() * total;
        pick = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
          u -= d2[i];
          if (u < 0.0 && d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(n)));
      }
      centers.row(c) = points.row(pick);
      d2 = d2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<Eigen::Index> label(static_cast<std::size_t>(n), -1);
    double wcss = 0.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
      bool changed = false;
      wcss = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index arg = 0;
        const double dist = (centers.rowwise() - points.row(i)).rowwise().squaredNorm().minCoeff(&arg);
        wcss += dist;
        if (label[i] != arg) {
          label[i] = arg;
          changed = true;
        }
      }
      if (!changed) break;
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(kk, points.cols());
      std::vector<std::size_t> counts(k, 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        sums.row(label[i]) += points.row(i);
        ++counts[static_cast<std::size_t>(label[i])];
      }
      for (Eigen::Index c = 0; c < kk; ++c) {
        // Empty clusters keep their previous center.
        if (counts[static_cast<std::size_t>(c)] > 0) {
          centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
      }
    }

    if (wcss < best.wcss) {
      best.wcss = wcss;
      best.best_restart = r;
      best.assignment.k = k;
      best.assignment.labels.resize(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) best.assignment.labels[i] = static_cast<std::uint32_t>(label[i] + 1);
    }
  }
  return best;
}

Assignment spectral_kmeans(const SignedGraph& graph, std::size_t k, std::uint64_t seed, std::size_t restarts) {
  const LaplacianOperator op = build_laplacian(graph, LaplacianKind::SignedSymmetric);
  SpectralOptions options;
  options.seed = combine_seed(seed, 0x5eed);
  const SpectralBasis basis = smallest_eigenpairs(op, k, options);
  return kmeans_pp(basis.eigenvectors, k, seed, restarts).assignment;
}

}  // namespace sgmbo
