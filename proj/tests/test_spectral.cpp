#include "helpers.hpp"

#include <cmath>

#include "sgmbo/generators.hpp"
#include "sgmbo/spectral.hpp"

using namespace sgmbo;

namespace {

SignedGraph single_edge(double w) {
  const Edge e{0, 1, w};
  return SignedGraph::from_triplets(2, std::span<const Edge>(&e, 1));
}

SpectralOptions iterative() {
  SpectralOptions o;
  o.dense_threshold = 0;
  return o;
}

Eigen::VectorXd oracle_eigenvalues(const LaplacianOperator& op, std::size_t m) {
  Eigen::MatrixXd a(op.matrix);
  if (op.kind == LaplacianKind::SignedRandomWalk) {
    const Eigen::VectorXd s = op.degrees.d_bar.cwiseSqrt();
    a = s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
    a = 0.5 * (a + a.transpose()).eval();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().head(static_cast<Eigen::Index>(m));
}

}  // namespace

TEST_CASE("two-node spectra") {
  for (double w : {1.0, -1.0}) {
    const SpectralBasis b = smallest_eigenpairs(build_laplacian(single_edge(w), LaplacianKind::Signed), 2);
    CHECK(std::abs(b.eigenvalues[0]) < 1e-14);
    CHECK(std::abs(b.eigenvalues[1] - 2.0) < 1e-14);
  }
}

TEST_CASE("iterative eigenvalues match the dense oracle") {
  Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 60 + 7 * static_cast<std::size_t>(t);
    const SignedGraph g = testing::random_signed_graph(n, 0.08, rng);
    for (auto kind : {LaplacianKind::Signed, LaplacianKind::SignedSymmetric, LaplacianKind::SignedRandomWalk}) {
      const LaplacianOperator op = build_laplacian(g, kind);
      SpectralOptions o = iterative();
      o.seed = static_cast<std::uint64_t>(t);
      const SpectralBasis b = smallest_eigenpairs(op, 10, o);
      const Eigen::VectorXd ref = oracle_eigenvalues(op, 10);
      CHECK((b.eigenvalues - ref).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("SSBM Laplacian, m = 5, iterative vs dense") {
  SsbmParams p;
  p.cluster_sizes = {40, 40, 40, 40, 40};
  p.sparsity = 0.2;
  p.noise = 0.1;
  p.seed = 9;
  const SignedGraph g = ssbm(p).graph;
  const LaplacianOperator op = build_laplacian(g, LaplacianKind::SignedSymmetric);
  const SpectralBasis b = smallest_eigenpairs(op, 5, iterative());
  CHECK((b.eigenvalues - oracle_eigenvalues(op, 5)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("basis invariants: ascending, orthonormal, small residual") {
  Rng rng(7);
  const SignedGraph g = testing::random_signed_graph(150, 0.05, rng);
  for (std::size_t threshold : {std::size_t{0}, std::size_t{512}}) {
    SpectralOptions o;
    o.dense_threshold = threshold;
    const LaplacianOperator op = build_laplacian(g, LaplacianKind::SignedSymmetric);
    const SpectralBasis b = smallest_eigenpairs(op, 8, o);
    for (Eigen::Index j = 1; j < b.eigenvalues.size(); ++j) CHECK(b.eigenvalues[j] >= b.eigenvalues[j - 1]);
    CHECK(b.eigenvalues.minCoeff() >= -1e-8);
    const Eigen::MatrixXd gram = b.eigenvectors.transpose() * b.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-8);
    for (Eigen::Index j = 0; j < 8; ++j) {
      const double r = (op.matrix * b.eigenvectors.col(j) - b.eigenvalues[j] * b.eigenvectors.col(j)).norm();
      CHECK(r <= 1e-9 * std::max(1.0, b.eigenvalues[j]));
    }
  }
}

TEST_CASE("random-walk basis: right eigenvectors with a biorthogonal dual") {
  Rng rng(13);
  const SignedGraph g = testing::random_signed_graph(120, 0.06, rng);
  const LaplacianOperator op = build_laplacian(g, LaplacianKind::SignedRandomWalk);
  const SpectralBasis b = smallest_eigenpairs(op, 6, iterative());
  const Eigen::MatrixXd lx = op.matrix * b.eigenvectors;
  CHECK((lx - b.eigenvectors * b.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((b.dual.transpose() * b.eigenvectors - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("same seed gives bitwise-identical eigenvalues") {
  Rng rng(19);
  const SignedGraph g = testing::random_signed_graph(200, 0.04, rng);
  const LaplacianOperator op = build_laplacian(g, LaplacianKind::Signed);
  const SpectralBasis a = smallest_eigenpairs(op, 10, iterative());
  const SpectralBasis b = smallest_eigenpairs(op, 10, iterative());
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("sign convention: first nonzero component positive") {
  Rng rng(21);
  const SignedGraph g = testing::random_signed_graph(80, 0.1, rng);
  const SpectralBasis b = smallest_eigenpairs(build_laplacian(g, LaplacianKind::Signed), 5);
  for (Eigen::Index j = 0; j < 5; ++j) {
    Eigen::Index i = 0;
    while (b.eigenvectors(i, j) == 0.0) ++i;
    CHECK(b.eigenvectors(i, j) > 0.0);
  }
}

TEST_CASE("bottom nonzero eigenvector") {
  Rng rng(1);
  SUBCASE("skips the zero eigenvalue") {
    const SpectralBasis b = smallest_eigenpairs(build_laplacian(single_edge(1.0), LaplacianKind::Signed), 2);
    const Eigen::VectorXd v = bottom_nonzero_eigenvector(b, rng);
    CHECK(std::abs(std::abs(v[0]) - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(v[0] + v[1]) < 1e-12);
  }
  SUBCASE("strictly positive spectrum picks the smallest") {
    SpectralBasis b;
    b.eigenvalues = Eigen::Vector2d(0.3, 0.8);
    b.eigenvectors = Eigen::Matrix2d::Identity();
    CHECK(bottom_nonzero_eigenvector(b, rng, 1e-8) == Eigen::Vector2d(1, 0));
  }
  SUBCASE("degenerate eigenvalue returns an element of its eigenspace") {
    // Triangle with weights 1/3: spectrum (0, 1, 1).
    const std::vector<Edge> tri{{0, 1, 1.0 / 3}, {0, 2, 1.0 / 3}, {1, 2, 1.0 / 3}};
    const LaplacianOperator op = build_laplacian(SignedGraph::from_triplets(3, tri), LaplacianKind::Signed);
    const SpectralBasis b = smallest_eigenpairs(op, 3);
    CHECK(std::abs(b.eigenvalues[1] - 1.0) < 1e-12);
    CHECK(std::abs(b.eigenvalues[2] - 1.0) < 1e-12);
    const Eigen::VectorXd v = bottom_nonzero_eigenvector(b, rng);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK((op.matrix * v - v).norm() <= 1e-8);
  }
  SUBCASE("all-zero spectrum raises") {
    const SpectralBasis b = smallest_eigenpairs(build_laplacian(SignedGraph(3), LaplacianKind::Signed), 3);
    CHECK_ERROR_CODE(bottom_nonzero_eigenvector(b, rng), ErrorCode::AllZeroSpectrum);
  }
}

TEST_CASE("m out of range is rejected") {
  const LaplacianOperator op = build_laplacian(single_edge(1.0), LaplacianKind::Signed);
  CHECK_ERROR_CODE(smallest_eigenpairs(op, 3), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(smallest_eigenpairs(op, 0), ErrorCode::InvalidArgument);
}
