#pragma once

#include <doctest.h>

#include <vector>

#include "sgmbo/error.hpp"
#include "sgmbo/graph.hpp"
#include "sgmbo/rng.hpp"

#define CHECK_ERROR_CODE(expr, expected_code)                         \
  do {                                                                \
    bool thrown_ = false;                                             \
    try {                                                             \
      (void)(expr);                                                   \
    } catch (const sgmbo::Error& e_) {                                \
      thrown_ = true;                                                 \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());         \
    }                                                                 \
    CHECK_MESSAGE(thrown_, "expected an sgmbo::Error from " #expr);   \
  } while (0)

namespace testing {

// Erdos-Renyi skeleton with uniform weights in [-2, 2] away from zero.
inline sgmbo::SignedGraph random_signed_graph(std::size_t n, double p, sgmbo::Rng& rng) {
  std::vector<sgmbo::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() >= p) continue;
      double w = 0.1 + 1.9 * rng.uniform();
      if (rng.uniform() < 0.5) w = -w;
      edges.push_back({i, j, w});
    }
  }
  // Ring keeps every node attached.
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, rng.uniform() < 0.5 ? 0.5 : -0.5});
  return sgmbo::SignedGraph::from_triplets(n, edges);
}

inline Eigen::VectorXd random_vector(std::size_t n, sgmbo::Rng& rng) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  return x;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace testing
