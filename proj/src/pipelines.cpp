#include "sgmbo/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

double color_affinity(const Image& image, std::size_t i, std::size_t j, double decay) {
  if (i == j) return 0.0;
  double d2 = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double d = image.channel(i, c) - image.channel(j, c);
    d2 += d * d;
  }
  return std::exp(-decay * std::sqrt(d2));
}

SignedGraph image_to_graph(const Image& image, const ImageGraphParams& params, ImageGraphStats* stats) {
  if (!(params.radius > 0.0) || !(params.decay > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "radius and decay must be positive");
  }
  const std::size_t n = image.pixel_count();
  if (image.rgb.size() != 3 * n) throw Error(ErrorCode::DimensionMismatch, "image buffer size mismatch");
  if (n < 2) throw Error(ErrorCode::DegenerateImage, "image needs at least two pixels");

  // Forward half of the disc: (dy > 0) or (dy == 0 and dx > 0).
  const auto reach = static_cast<long>(std::floor(params.radius));
  const double r2 = params.radius * params.radius;
  std::vector<std::pair<long, long>> offsets;
  for (long dy = 0; dy <= reach; ++dy) {
    for (long dx = -reach; dx <= reach; ++dx) {
      if (dy == 0 && dx <= 0) continue;
      if (static_cast<double>(dy * dy + dx * dx) <= r2) offsets.emplace_back(dy, dx);
    }
  }

  std::vector<Edge> edges;
  const auto h = static_cast<long>(image.height);
  const auto w = static_cast<long>(image.width);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y * w + x);
      for (const auto& [dy, dx] : offsets) {
        const long yy = y + dy;
        const long xx = x + dx;
        if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
        const auto j = static_cast<std::size_t>(yy * w + xx);
        double d2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
          const double d = image.channel(i, c) - image.channel(j, c);
          d2 += d * d;
        }
        edges.push_back({i, j, std::sqrt(d2)});
      }
    }
  }
  if (edges.empty()) throw Error(ErrorCode::DegenerateImage, "no pixel pairs within the radius");

  double mean = 0.0;
  for (const Edge& e : edges) mean += e.w;
  mean /= static_cast<double>(edges.size());
  double ss = 0.0;
  for (const Edge& e : edges) ss += (e.w - mean) * (e.w - mean);
  const double sd = edges.size() > 1 ? std::sqrt(ss / static_cast<double>(edges.size() - 1)) : 0.0;
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateImage, "all candidate color distances are equal");

  std::size_t above_one = 0;
  for (Edge& e : edges) {
    e.w = std::exp(-params.decay * (e.w - mean) / sd);
    if (e.w > 1.0) ++above_one;
  }
  if (stats) *stats = {mean, sd, above_one};
  return SignedGraph::from_triplets(n, edges);
}

Eigen::VectorXd log_returns(const Eigen::VectorXd& prices) {
  Eigen::MatrixXd row = prices.transpose();
  return log_returns(row).row(0).transpose();
}

Eigen::MatrixXd log_returns(const Eigen::MatrixXd& prices) {
  if (prices.cols() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two time points");
  for (Eigen::Index i = 0; i < prices.rows(); ++i) {
    for (Eigen::Index t = 0; t < prices.cols(); ++t) {
      if (!(prices(i, t) > 0.0) || !std::isfinite(prices(i, t))) {
        throw Error(ErrorCode::NonPositivePrice,
                    "non-positive price for instrument " + std::to_string(i) + " at t=" + std::to_string(t),
                    static_cast<std::size_t>(i));
      }
    }
  }
  Eigen::MatrixXd r(prices.rows(), prices.cols() - 1);
  for (Eigen::Index t = 1; t < prices.cols(); ++t) {
    r.col(t - 1) = (prices.col(t).array() / prices.col(t - 1).array()).log();
  }
  return r;
}

Eigen::MatrixXd excess_returns(const Eigen::MatrixXd& returns, const Eigen::VectorXd& market) {
  if (market.size() != returns.cols()) throw Error(ErrorCode::LengthMismatch, "market series length mismatch");
  return returns.rowwise() - market.transpose();
}

SignedGraph pearson_correlation_graph(const Eigen::MatrixXd& returns) {
  const Eigen::Index n = returns.rows();
  if (returns.cols() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two observations per row");
  Eigen::MatrixXd centered = returns.colwise() - returns.rowwise().mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double nrm = centered.row(i).norm();
    if (!(nrm > 1e-12 * returns.row(i).norm()) || nrm == 0.0) throw Error(ErrorCode::ZeroVarianceRow, "row " + std::to_string(i) + " has zero variance", i);
    centered.row(i) /= nrm;
  }
  const Eigen::MatrixXd corr = centered * centered.transpose();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = std::clamp(corr(i, j), -1.0, 1.0);
      if (c != 0.0) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), c});
    }
  }
  return SignedGraph::from_triplets(static_cast<std::size_t>(n), edges);
}

SignedGraph symmetrize_center(const CountMatrix& counts, CenteringStats* stats) {
  std::map<std::pair<std::size_t, std::size_t>, double> total;
  for (const Edge& e : counts.entries) {
    if (e.i >= counts.node_count || e.j >= counts.node_count) {
      throw Error(ErrorCode::InvalidArgument, "count entry out of range");
    }
    if (e.i == e.j) {
      if (e.w != 0.0) throw Error(ErrorCode::InvalidArgument, "count matrix must have a zero diagonal", e.i);
      continue;
    }
    if (e.w < 0.0) throw Error(ErrorCode::InvalidArgument, "counts must be nonnegative");
    total[{std::min(e.i, e.j), std::max(e.i, e.j)}] += e.w;
  }
  std::vector<double> values;
  for (const auto& [key, v] : total) {
    if (v != 0.0) values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorCode::EmptyMatrix, "count matrix has no nonzero entries");

  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  const double median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);

  std::vector<Edge> edges;
  std::size_t dropped = 0;
  for (const auto& [key, v] : total) {
    if (v == 0.0) continue;
    const double a = v - median;
    if (a == 0.0) {
      ++dropped;
    } else {
      edges.push_back({key.first, key.second, a});
    }
  }
  if (stats) *stats = {median, dropped};
  return SignedGraph::from_triplets(counts.node_count, edges);
}

}  // namespace sgmbo
