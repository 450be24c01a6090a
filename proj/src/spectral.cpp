#include "sgmbo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

namespace {

constexpr double kSignEps = 1e-10;

// Orthogonalizes w against the first `cols` columns of q (two passes of
// classical Gram-Schmidt). Returns the accumulated coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& q, Eigen::Index cols, Eigen::VectorXd& w) {
  Eigen::VectorXd h = q.leftCols(cols).transpose() * w;
  w.noalias() -= q.leftCols(cols) * h;
  const Eigen::VectorXd h2 = q.leftCols(cols).transpose() * w;
  w.noalias() -= q.leftCols(cols) * h2;
  return h + h2;
}

// Fills column `col` of q with a random unit vector orthogonal to the
// columns before it. Returns false if the space is exhausted.
bool random_orthogonal(Eigen::MatrixXd& q, Eigen::Index col, Rng& rng) {
  const Eigen::Index n = q.rows();
  for (int attempt = 0; attempt < 5; ++attempt) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = rng.normal();
    if (col > 0) orthogonalize(q, col, w);
    const double nrm = w.norm();
    if (nrm > 1e-8) {
      q.col(col) = w / nrm;
      return true;
    }
  }
  return false;
}

}  // namespace

void normalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double scale = vectors.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, c)) > kSignEps * scale) {
        if (vectors(i, c) < 0.0) vectors.col(c) *= -1.0;
        break;
      }
    }
  }
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_smallest(const Eigen::MatrixXd& a, std::size_t m) {
  const auto mm = static_cast<Eigen::Index>(m);
  if (m == 0 || mm > a.rows()) throw Error(ErrorCode::InvalidArgument, "dense_smallest: bad m");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense eigensolver failed");
  Eigen::VectorXd values = solver.eigenvalues().head(mm);
  Eigen::MatrixXd vectors = solver.eigenvectors().leftCols(mm);
  normalize_signs(vectors);
  return {values, vectors};
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> lanczos_smallest(const Eigen::SparseMatrix<double>& a,
                                                             std::size_t m, const SpectralOptions& options) {
  const Eigen::Index n = a.rows();
  const auto want = static_cast<Eigen::Index>(m);
  if (m == 0 || want > n) throw Error(ErrorCode::InvalidArgument, "lanczos_smallest: bad m");

  Eigen::Index p = options.krylov_dim ? static_cast<Eigen::Index>(options.krylov_dim)
                                      : std::max<Eigen::Index>(2 * want + 40, 60);
  p = std::clamp<Eigen::Index>(p, std::min(n, want + 1), n);
  const Eigen::Index keep_max = std::max<Eigen::Index>(want, want + (p - want) / 2);

  Rng rng(options.seed);
  Eigen::MatrixXd q(n, p + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);
  random_orthogonal(q, 0, rng);

  Eigen::Index start = 0;  // columns [0, start) hold locked Ritz vectors
  double beta = 0.0;
  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    // Expand the basis from column `start` to p.
    for (Eigen::Index j = start; j < p; ++j) {
      Eigen::VectorXd w = a * q.col(j);
      const Eigen::VectorXd coeffs = orthogonalize(q, j + 1, w);
      for (Eigen::Index i = 0; i <= j; ++i) {
        h(i, j) = coeffs[i];
        h(j, i) = coeffs[i];
      }
      beta = w.norm();
      const double scale = std::max(1.0, h.topLeftCorner(j + 1, j + 1).cwiseAbs().maxCoeff());
      if (j + 1 < n && beta > 1e-12 * scale) {
        q.col(j + 1) = w / beta;
      } else {
        // Invariant subspace: continue from a fresh orthogonal direction.
        beta = 0.0;
        if (j + 1 < n) random_orthogonal(q, j + 1, rng);
      }
      if (j + 1 < p) {
        h(j + 1, j) = beta;
        h(j, j + 1) = beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(h);
    const Eigen::VectorXd& theta = ritz.eigenvalues();
    const Eigen::MatrixXd& s = ritz.eigenvectors();

    bool converged = true;
    for (Eigen::Index i = 0; i < want && converged; ++i) {
      const double resid = std::abs(beta * s(p - 1, i));
      converged = resid <= options.tol * std::max(1.0, std::abs(theta[i]));
    }
    if (converged || p == n) {
      Eigen::MatrixXd vectors = q.leftCols(p) * s.leftCols(want);
      for (Eigen::Index c = 0; c < want; ++c) vectors.col(c).normalize();
      normalize_signs(vectors);
      return {theta.head(want), vectors};
    }

    // Thick restart: keep the `keep` smallest Ritz vectors plus the residual
    // direction. The projected matrix becomes diagonal with an arrow row.
    const Eigen::Index keep = keep_max;
    Eigen::MatrixXd locked = q.leftCols(p) * s.leftCols(keep);
    const Eigen::VectorXd residual_dir = q.col(p);
    q.leftCols(keep) = locked;
    q.col(keep) = residual_dir;
    h.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      h(i, i) = theta[i];
      h(keep, i) = beta * s(p - 1, i);
      h(i, keep) = h(keep, i);
    }
    if (beta == 0.0) {
      // The residual column was a random restart vector; reorthogonalize it.
      if (!random_orthogonal(q, keep, rng)) break;
      for (Eigen::Index i = 0; i < keep; ++i) h(keep, i) = h(i, keep) = 0.0;
    }
    // Column `keep` is already in place; its Rayleigh coefficients are
    // recomputed by the expansion loop, which overwrites row/col `keep`.
    start = keep;
  }
  throw Error(ErrorCode::NoConvergence,
              "Lanczos did not converge within " + std::to_string(options.max_restarts) + " restarts",
              options.max_restarts);
}

SpectralBasis smallest_eigenpairs(const LaplacianOperator& op, std::size_t m, const SpectralOptions& options) {
  const std::size_t n = op.size();
  if (m == 0 || m > n) {
    throw Error(ErrorCode::InvalidArgument,
                "requested " + std::to_string(m) + " eigenpairs of a " + std::to_string(n) + "-node operator");
  }

  // The random-walk operator is solved through its symmetric similar form.
  Eigen::SparseMatrix<double> sym;
  Eigen::VectorXd sqrt_d;
  const bool rw = op.kind == LaplacianKind::SignedRandomWalk;
  if (rw) {
    sqrt_d = op.degrees.d_bar.cwiseSqrt();
    const Eigen::VectorXd inv_sqrt_d = sqrt_d.cwiseInverse();
    sym = sqrt_d.asDiagonal() * op.matrix * inv_sqrt_d.asDiagonal();
    // Exact symmetry up to rounding; average away the asymmetry.
    Eigen::SparseMatrix<double> t = sym.transpose();
    sym = 0.5 * (sym + t);
  }
  const Eigen::SparseMatrix<double>& a = rw ? sym : op.matrix;

  std::pair<Eigen::VectorXd, Eigen::MatrixXd> pairs =
      n <= options.dense_threshold ? dense_smallest(Eigen::MatrixXd(a), m) : lanczos_smallest(a, m, options);

  SpectralBasis basis;
  basis.source_kind = op.kind;
  basis.eigenvalues = std::move(pairs.first);
  Eigen::MatrixXd& y = pairs.second;

  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double lambda = basis.eigenvalues[j];
    const double resid = (a * y.col(j) - lambda * y.col(j)).norm();
    if (!(resid <= std::max(options.tol, 1e-9) * std::max(1.0, std::abs(lambda)))) {
      throw Error(ErrorCode::NoConvergence, "eigenpair " + std::to_string(j) + " residual " +
                                                std::to_string(resid) + " above tolerance");
    }
  }

  if (rw) {
    basis.eigenvectors = sqrt_d.cwiseInverse().asDiagonal() * y;
    basis.dual = sqrt_d.asDiagonal() * y;
  } else {
    basis.eigenvectors = std::move(y);
  }
  return basis;
}

double default_zero_tol(const SpectralBasis& basis) {
  const double top = basis.eigenvalues.size() ? basis.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-8 * top;
}

Eigen::VectorXd bottom_nonzero_eigenvector(const SpectralBasis& basis, Rng& rng, std::optional<double> zero_tol) {
  const double tol = zero_tol.value_or(default_zero_tol(basis));
  const Eigen::VectorXd& lambda = basis.eigenvalues;
  Eigen::Index first = -1;
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    if (lambda[j] > tol) {
      first = j;
      break;
    }
  }
  if (first < 0) throw Error(ErrorCode::AllZeroSpectrum, "no eigenvalue above the zero threshold");

  const double mult_tol = 1e-8 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  Eigen::Index last = first;
  while (last + 1 < lambda.size() && lambda[last + 1] - lambda[first] <= mult_tol) ++last;

  if (last == first) return basis.eigenvectors.col(first);

  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(basis.eigenvectors.rows(), 1);
  for (Eigen::Index j = first; j <= last; ++j) v.col(0) += rng.normal() * basis.eigenvectors.col(j);
  v.col(0).normalize();
  normalize_signs(v);
  return v.col(0);
}

void write_spectrum_csv(const SpectralBasis& basis, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path);
  out.precision(17);
  out << "lambda";
  for (std::size_t i = 0; i < basis.node_count(); ++i) out << ",x" << i + 1;
  out << '\n';
  for (Eigen::Index j = 0; j < basis.eigenvalues.size(); ++j) {
    out << basis.eigenvalues[j];
    for (Eigen::Index i = 0; i < basis.eigenvectors.rows(); ++i) out << ',' << basis.eigenvectors(i, j);
    out << '\n';
  }
}

}  // namespace sgmbo
