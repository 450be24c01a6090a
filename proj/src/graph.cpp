#include "sgmbo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

SignedGraph SignedGraph::from_triplets(std::size_t node_count, std::span<const Edge> triplets) {
  std::vector<Edge> edges;
  edges.reserve(triplets.size());
  for (const Edge& e : triplets) {
    if (e.i >= node_count || e.j >= node_count) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") out of range");
    }
    if (e.i == e.j) throw Error(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(e.i), e.i);
    if (!std::isfinite(e.w)) throw Error(ErrorCode::InvalidArgument, "non-finite edge weight");
    edges.push_back(e.i < e.j ? e : Edge{e.j, e.i, e.w});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });

  SignedGraph g(node_count);
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!g.edges_.empty() && g.edges_.back().i == e.i && g.edges_.back().j == e.j) {
      g.edges_.back().w += e.w;
    } else {
      g.edges_.push_back(e);
    }
  }
  std::erase_if(g.edges_, [](const Edge& e) { return e.w == 0.0; });
  return g;
}

Eigen::SparseMatrix<double> SignedGraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * edges_.size());
  for (const Edge& e : edges_) {
    t.emplace_back(static_cast<int>(e.i), static_cast<int>(e.j), e.w);
    t.emplace_back(static_cast<int>(e.j), static_cast<int>(e.i), e.w);
  }
  const auto n = static_cast<Eigen::Index>(node_count_);
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

Eigen::MatrixXd SignedGraph::dense_adjacency() const {
  const auto n = static_cast<Eigen::Index>(node_count_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    a(e.i, e.j) = e.w;
    a(e.j, e.i) = e.w;
  }
  return a;
}

std::pair<SignedGraph, SignedGraph> decompose(const SignedGraph& graph) {
  std::vector<Edge> pos;
  std::vector<Edge> neg;
  for (const Edge& e : graph.edges()) {
    if (e.w > 0.0) {
      pos.push_back(e);
    } else {
      neg.push_back({e.i, e.j, -e.w});
    }
  }
  return {SignedGraph::from_triplets(graph.node_count(), pos),
          SignedGraph::from_triplets(graph.node_count(), neg)};
}

SignedGraph recombine(const SignedGraph& pos, const SignedGraph& neg) {
  if (pos.node_count() != neg.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "recombine: node counts differ");
  }
  std::vector<Edge> all(pos.edges());
  for (const Edge& e : neg.edges()) all.push_back({e.i, e.j, -e.w});
  return SignedGraph::from_triplets(pos.node_count(), all);
}

DegreeMatrices degrees(const SignedGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  DegreeMatrices d{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (const Edge& e : graph.edges()) {
    Eigen::VectorXd& part = e.w > 0.0 ? d.d_plus : d.d_minus;
    const double a = std::abs(e.w);
    part[e.i] += a;
    part[e.j] += a;
  }
  d.d_bar = d.d_plus + d.d_minus;
  return d;
}

bool is_unsigned(const SignedGraph& graph) {
  return std::all_of(graph.edges().begin(), graph.edges().end(),
                     [](const Edge& e) { return e.w > 0.0; });
}

}  // namespace sgmbo
