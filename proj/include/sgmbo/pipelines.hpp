#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgmbo/graph.hpp"

namespace sgmbo {

/// Row-major RGB image with channels in [0, 1].
struct Image {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> rgb;  // size height * width * 3

  std::size_t pixel_count() const noexcept { return height * width; }
  double channel(std::size_t pixel, std::size_t c) const { return rgb[3 * pixel + c]; }
};

struct ImageGraphParams {
  double radius = 5.0;
  double decay = 14.0;  // b in exp(-b z)
};

struct ImageGraphStats {
  double mean_distance = 0.0;  // of raw color distances over candidate pairs
  double sd_distance = 0.0;    // sample standard deviation (n - 1)
  std::size_t weights_above_one = 0;
};

/// Pixels become nodes (row-major). Pairs at grid distance <= radius are
/// linked with weight exp(-b z), where z is the z-score of the RGB distance
/// among all candidate pairs. Raises DegenerateImage when every candidate
/// distance is equal.
SignedGraph image_to_graph(const Image& image, const ImageGraphParams& params, ImageGraphStats* stats = nullptr);

/// Unnormalized color affinity exp(-b |col(i) - col(j)|), and 0 for i == j.
double color_affinity(const Image& image, std::size_t i, std::size_t j, double decay);

/// prices: n instruments x T days, strictly positive.
struct TimeSeriesPanel {
  Eigen::MatrixXd prices;
  std::vector<std::string> instruments;
  std::vector<std::string> dates;
  std::optional<Eigen::VectorXd> market;  // length T when present
};

/// R_it = log(P_it / P_i,t-1), n x (T - 1). Raises NonPositivePrice(i).
Eigen::MatrixXd log_returns(const Eigen::MatrixXd& prices);
Eigen::VectorXd log_returns(const Eigen::VectorXd& prices);

/// Subtracts the market row from every instrument row. Raises LengthMismatch.
Eigen::MatrixXd excess_returns(const Eigen::MatrixXd& returns, const Eigen::VectorXd& market);

/// Complete signed graph of pairwise Pearson correlations between rows.
/// Raises ZeroVarianceRow(i).
SignedGraph pearson_correlation_graph(const Eigen::MatrixXd& returns);

/// Directed nonnegative counts M as (i, j, c) entries, i != j.
struct CountMatrix {
  std::size_t node_count = 0;
  std::vector<Edge> entries;  // i -> j with count w (orientation matters)
};

struct CenteringStats {
  double median = 0.0;
  std::size_t dropped_zeros = 0;
};

/// A = (M + M^T) - median on the nonzero entries of M + M^T; the median is
/// taken over undirected pairs, with the mean of the middle two for even
/// counts. Centered entries that become exactly zero are dropped. Raises
/// EmptyMatrix when M has no nonzero entry.
SignedGraph symmetrize_center(const CountMatrix& counts, CenteringStats* stats = nullptr);

}  // namespace sgmbo
