#include "sgmbo/laplacian.hpp"

#include <cmath>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::SparseMatrix<double> assemble(std::size_t n, Triplets& t) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  m.prune(0.0);
  return m;
}

void add_sym(Triplets& t, const Edge& e, double v) {
  t.emplace_back(static_cast<int>(e.i), static_cast<int>(e.j), v);
  t.emplace_back(static_cast<int>(e.j), static_cast<int>(e.i), v);
}

void require_positive_degrees(const DegreeMatrices& d) {
  for (Eigen::Index i = 0; i < d.d_bar.size(); ++i) {
    if (d.d_bar[i] <= 0.0) {
      throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(i) + " is isolated",
                  static_cast<std::size_t>(i));
    }
  }
}

}  // namespace

std::string_view to_string(LaplacianKind kind) noexcept {
  switch (kind) {
    case LaplacianKind::Signed: return "signed";
    case LaplacianKind::SignedRandomWalk: return "signed_random_walk";
    case LaplacianKind::SignedSymmetric: return "signed_symmetric";
    case LaplacianKind::PositivePart: return "positive_part";
    case LaplacianKind::Signless: return "signless";
    case LaplacianKind::UnsignedCombinatorial: return "unsigned_combinatorial";
  }
  return "unknown";
}

LaplacianKind parse_laplacian_kind(std::string_view name) {
  for (auto kind : {LaplacianKind::Signed, LaplacianKind::SignedRandomWalk, LaplacianKind::SignedSymmetric,
                    LaplacianKind::PositivePart, LaplacianKind::Signless,
                    LaplacianKind::UnsignedCombinatorial}) {
    if (to_string(kind) == name) return kind;
  }
  if (name == "sym") return LaplacianKind::SignedSymmetric;
  if (name == "rw") return LaplacianKind::SignedRandomWalk;
  throw Error(ErrorCode::InvalidArgument, "unknown Laplacian kind '" + std::string(name) + "'");
}

LaplacianOperator build_laplacian(const SignedGraph& graph, LaplacianKind kind) {
  LaplacianOperator op;
  op.kind = kind;
  op.degrees = degrees(graph);
  const DegreeMatrices& d = op.degrees;
  const std::size_t n = graph.node_count();

  Triplets t;
  t.reserve(2 * graph.edge_count() + n);
  switch (kind) {
    case LaplacianKind::Signed:
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, d.d_bar[i]);
      for (const Edge& e : graph.edges()) add_sym(t, e, -e.w);
      break;
    case LaplacianKind::SignedRandomWalk:
      require_positive_degrees(d);
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
      for (const Edge& e : graph.edges()) {
        t.emplace_back(static_cast<int>(e.i), static_cast<int>(e.j), -e.w / d.d_bar[e.i]);
        t.emplace_back(static_cast<int>(e.j), static_cast<int>(e.i), -e.w / d.d_bar[e.j]);
      }
      break;
    case LaplacianKind::SignedSymmetric:
      require_positive_degrees(d);
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
      for (const Edge& e : graph.edges()) {
        add_sym(t, e, -e.w / std::sqrt(d.d_bar[e.i] * d.d_bar[e.j]));
      }
      break;
    case LaplacianKind::PositivePart:
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, d.d_plus[i]);
      for (const Edge& e : graph.edges()) {
        if (e.w > 0.0) add_sym(t, e, -e.w);
      }
      break;
    case LaplacianKind::Signless:
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, d.d_minus[i]);
      for (const Edge& e : graph.edges()) {
        if (e.w < 0.0) add_sym(t, e, -e.w);
      }
      break;
    case LaplacianKind::UnsignedCombinatorial: {
      Eigen::VectorXd rows = d.d_plus - d.d_minus;
      for (std::size_t i = 0; i < n; ++i) t.emplace_back(i, i, rows[i]);
      for (const Edge& e : graph.edges()) add_sym(t, e, -e.w);
      break;
    }
  }
  op.matrix = assemble(n, t);
  return op;
}

LaplacianOperator symmetric_normalize(const LaplacianOperator& op) {
  const Eigen::VectorXd diag = op.matrix.diagonal();
  Eigen::VectorXd scale(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] <= 0.0) {
      throw Error(ErrorCode::IsolatedNode, "node " + std::to_string(i) + " is isolated",
                  static_cast<std::size_t>(i));
    }
    scale[i] = 1.0 / std::sqrt(diag[i]);
  }
  LaplacianOperator out;
  out.kind = LaplacianKind::SignedSymmetric;
  out.degrees = op.degrees;
  out.degrees.d_bar = diag;
  out.matrix = scale.asDiagonal() * op.matrix * scale.asDiagonal();
  return out;
}

double quadratic_form(const LaplacianOperator& op, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != op.size()) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic_form: vector length mismatch");
  }
  return x.dot(op.matrix * x);
}

double positive_part_edge_sum(const SignedGraph& graph, const Eigen::VectorXd& x) {
  double s = 0.0;
  for (const Edge& e : graph.edges()) {
    if (e.w > 0.0) {
      const double d = x[e.i] - x[e.j];
      s += e.w * d * d;
    }
  }
  return s;
}

double signless_edge_sum(const SignedGraph& graph, const Eigen::VectorXd& x) {
  double s = 0.0;
  for (const Edge& e : graph.edges()) {
    if (e.w < 0.0) {
      const double d = x[e.i] + x[e.j];
      s -= e.w * d * d;
    }
  }
  return s;
}

double signed_gl_energy(const LaplacianOperator& op, const Eigen::MatrixXd& u_pm, double eps) {
  if (static_cast<std::size_t>(u_pm.rows()) != op.size()) {
    throw Error(ErrorCode::DimensionMismatch, "signed_gl_energy: row count mismatch");
  }
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "signed_gl_energy: eps must be positive");

  const Eigen::MatrixXd lu = op.matrix * u_pm;
  const double dirichlet = (u_pm.array() * lu.array()).sum();

  const Eigen::Index k = u_pm.cols();
  double wells = 0.0;
  for (Eigen::Index i = 0; i < u_pm.rows(); ++i) {
    double prod = 1.0;
    for (Eigen::Index c = 0; c < k && prod != 0.0; ++c) {
      // |u_i - (2 e_c - 1)|_1
      double l1 = 0.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        const double vertex = j == c ? 1.0 : -1.0;
        l1 += std::abs(u_pm(i, j) - vertex);
      }
      prod *= l1 * l1 / 16.0;
    }
    wells += prod;
  }
  return eps / 8.0 * dirichlet + wells / (2.0 * eps);
}

}  // namespace sgmbo
