#pragma once

#include <string_view>

#include "sgmbo/graph.hpp"

namespace sgmbo {

enum class LaplacianKind {
  Signed,                 // D_bar - A
  SignedRandomWalk,       // I - D_bar^-1 A
  SignedSymmetric,        // I - D_bar^-1/2 A D_bar^-1/2
  PositivePart,           // D+ - A+
  Signless,               // D- + A-
  UnsignedCombinatorial,  // D - A with D the plain (signed) row sums
};

std::string_view to_string(LaplacianKind kind) noexcept;
LaplacianKind parse_laplacian_kind(std::string_view name);

/// A Laplacian matrix together with the degrees it was built from.
struct LaplacianOperator {
  LaplacianKind kind = LaplacianKind::Signed;
  Eigen::SparseMatrix<double> matrix;
  DegreeMatrices degrees;

  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  bool symmetric() const noexcept { return kind != LaplacianKind::SignedRandomWalk; }
};

/// Raises IsolatedNode(i) for the normalized kinds when d_bar[i] == 0.
LaplacianOperator build_laplacian(const SignedGraph& graph, LaplacianKind kind);

/// Symmetric diagonal scaling diag(M)^-1/2 M diag(M)^-1/2 of an arbitrary
/// Laplacian-like operator. Used for composed operators (e.g. L+ built from
/// an augmented positive part) that have no single source graph.
LaplacianOperator symmetric_normalize(const LaplacianOperator& op);

/// x^T M x.
double quadratic_form(const LaplacianOperator& op, const Eigen::VectorXd& x);

/// Sum over edges of A+_ij (x_i - x_j)^2.
double positive_part_edge_sum(const SignedGraph& graph, const Eigen::VectorXd& x);

/// Sum over edges of A-_ij (x_i + x_j)^2.
double signless_edge_sum(const SignedGraph& graph, const Eigen::VectorXd& x);

/// Signed Ginzburg-Landau energy of a {-1,1}-representation matrix:
///
///   (eps/8) <U, L U> + (1/(2 eps)) sum_i prod_k (1/16) |u_i - e_k|_1^2
///
/// where e_k = 2 e_k - 1 are the vertices of the {-1,1} simplex.
double signed_gl_energy(const LaplacianOperator& op, const Eigen::MatrixXd& u_pm, double eps = 1.0);

}  // namespace sgmbo
