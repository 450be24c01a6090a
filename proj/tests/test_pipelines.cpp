#include "helpers.hpp"

#include <cmath>

#include "sgmbo/pipelines.hpp"

using namespace sgmbo;

namespace {

Image gradient_image(std::size_t h, std::size_t w) {
  Image img{h, w, std::vector<double>(h * w * 3)};
  for (std::size_t p = 0; p < h * w; ++p) {
    img.rgb[3 * p] = static_cast<double>(p % w) / static_cast<double>(w);
    img.rgb[3 * p + 1] = static_cast<double>(p / w) / static_cast<double>(h);
    img.rgb[3 * p + 2] = 0.5;
  }
  return img;
}

}  // namespace

TEST_CASE("image graph neighbourhood and weights") {
  const Image img = gradient_image(3, 3);
  ImageGraphParams p;
  p.radius = 1.5;
  ImageGraphStats stats;
  const SignedGraph g = image_to_graph(img, p, &stats);
  // 12 axis-aligned plus 8 diagonal pairs.
  CHECK(g.edge_count() == 20);

  // Recompute the z-scores directly.
  std::vector<double> dist;
  for (const Edge& e : g.edges()) {
    double s = 0;
    for (int c = 0; c < 3; ++c) s += std::pow(img.channel(e.i, c) - img.channel(e.j, c), 2);
    dist.push_back(std::sqrt(s));
  }
  double mean = 0;
  for (double d : dist) mean += d;
  mean /= dist.size();
  double var = 0;
  for (double d : dist) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / (dist.size() - 1));
  CHECK(std::abs(stats.mean_distance - mean) < 1e-12);
  CHECK(std::abs(stats.sd_distance - sd) < 1e-12);
  std::size_t above = 0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double w = std::exp(-p.decay * (dist[k] - mean) / sd);
    CHECK(std::abs(g.edges()[k].w - w) < 1e-12 * std::max(1.0, w));
    CHECK(g.edges()[k].w > 0);
    above += w > 1.0;
  }
  CHECK(stats.weights_above_one == above);

  p.radius = 1.0;
  // Square gradient: every axis-aligned step has the same color distance.
  CHECK_ERROR_CODE(image_to_graph(img, p), ErrorCode::DegenerateImage);
  CHECK(image_to_graph(gradient_image(3, 4), p).edge_count() == 17);
}

TEST_CASE("image graph is connected for radius >= 1") {
  const Image img = gradient_image(6, 7);
  const SignedGraph g = image_to_graph(img, ImageGraphParams{1.0, 14.0});
  std::vector<std::vector<std::size_t>> adj(42);
  for (const Edge& e : g.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<bool> seen(42, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  CHECK(count == 42);
}

TEST_CASE("image graph errors and affinity") {
  Image flat{2, 2, std::vector<double>(12, 0.3)};
  CHECK_ERROR_CODE(image_to_graph(flat, ImageGraphParams{}), ErrorCode::DegenerateImage);
  const Image img = gradient_image(2, 2);
  CHECK(color_affinity(img, 1, 1, 3.0) == 0.0);
  CHECK(std::abs(color_affinity(img, 0, 1, 2.0) - std::exp(-2.0 * 0.5)) < 1e-15);
}

TEST_CASE("log returns") {
  Eigen::MatrixXd p(1, 2);
  p << 1.0, std::exp(1.0);
  CHECK(std::abs(log_returns(p)(0, 0) - 1.0) < 1e-15);

  Rng rng(4);
  Eigen::MatrixXd prices(3, 50);
  for (int i = 0; i < 3; ++i) {
    prices(i, 0) = 100;
    for (int t = 1; t < 50; ++t) prices(i, t) = prices(i, t - 1) * std::exp(0.01 * rng.normal());
  }
  const Eigen::MatrixXd r = log_returns(prices);
  CHECK(r.cols() == 49);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r.row(i).sum() - std::log(prices(i, 49) / prices(i, 0))) < 1e-12);

  prices(1, 7) = 0.0;
  CHECK_ERROR_CODE(log_returns(prices), ErrorCode::NonPositivePrice);
}

TEST_CASE("excess returns") {
  Eigen::MatrixXd r(2, 3);
  r << 1, 2, 3, 4, 5, 6;
  const Eigen::Vector3d m(1, 1, 1);
  Eigen::MatrixXd expect(2, 3);
  expect << 0, 1, 2, 3, 4, 5;
  CHECK(excess_returns(r, m) == expect);
  CHECK(excess_returns(r, Eigen::Vector3d::Zero()) == r);
  CHECK_ERROR_CODE(excess_returns(r, Eigen::Vector2d(1, 1)), ErrorCode::LengthMismatch);
}

TEST_CASE("Pearson correlation graph") {
  Eigen::MatrixXd dup(2, 5);
  dup << 1, 3, 2, 5, 4, 1, 3, 2, 5, 4;
  CHECK(std::abs(pearson_correlation_graph(dup).edges()[0].w - 1.0) < 1e-15);
  Eigen::MatrixXd neg = dup;
  neg.row(1) *= -2.0;
  CHECK(std::abs(pearson_correlation_graph(neg).edges()[0].w + 1.0) < 1e-15);

  Rng rng(9);
  Eigen::MatrixXd r(5, 100);
  for (int i = 0; i < 5; ++i)
    for (int t = 0; t < 100; ++t) r(i, t) = rng.normal() + (i > 0 ? 0.5 * r(0, t) : 0.0);
  const SignedGraph g = pearson_correlation_graph(r);
  CHECK(g.edge_count() == 10);
  for (const Edge& e : g.edges()) {
    const Eigen::VectorXd a = r.row(e.i).array() - r.row(e.i).mean();
    const Eigen::VectorXd b = r.row(e.j).array() - r.row(e.j).mean();
    CHECK(std::abs(e.w - a.dot(b) / (a.norm() * b.norm())) < 1e-12);
  }
  r.row(3).setConstant(0.2);
  CHECK_ERROR_CODE(pearson_correlation_graph(r), ErrorCode::ZeroVarianceRow);
}

TEST_CASE("symmetrize and center counts") {
  CenteringStats stats;
  const SignedGraph one = symmetrize_center(CountMatrix{2, {{0, 1, 3.0}, {1, 0, 1.0}}}, &stats);
  CHECK(stats.median == 4.0);
  CHECK(stats.dropped_zeros == 1);
  CHECK(one.edge_count() == 0);

  const SignedGraph two = symmetrize_center(CountMatrix{3, {{0, 1, 2.0}, {1, 2, 6.0}}}, &stats);
  CHECK(stats.median == 4.0);
  CHECK(two.edges() == std::vector<Edge>{{0, 1, -2.0}, {1, 2, 2.0}});

  // Symmetric input doubles before centering: pairs 2, 4, 10 -> median 4.
  const SignedGraph sym =
      symmetrize_center(CountMatrix{3, {{0, 1, 1.0}, {1, 0, 1.0}, {0, 2, 2.0}, {2, 0, 2.0}, {1, 2, 5.0}, {2, 1, 5.0}}}, &stats);
  CHECK(stats.median == 4.0);
  CHECK(sym.edges() == std::vector<Edge>{{0, 1, -2.0}, {1, 2, 6.0}});

  CHECK_ERROR_CODE(symmetrize_center(CountMatrix{3, {}}), ErrorCode::EmptyMatrix);
}
