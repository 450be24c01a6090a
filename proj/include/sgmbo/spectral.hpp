#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sgmbo/laplacian.hpp"
#include "sgmbo/rng.hpp"

namespace sgmbo {

/// The m algebraically smallest eigenpairs of a Laplacian.
///
/// For the symmetric kinds the columns of `eigenvectors` are orthonormal and
/// `dual` is empty. For SignedRandomWalk the eigenvectors are the right
/// eigenvectors D^-1/2 Y of the similar symmetric problem and `dual` holds
/// D^1/2 Y, so that dual^T eigenvectors = I and the spectral propagator is
/// eigenvectors * f(Lambda) * dual^T.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // V x m
  Eigen::MatrixXd dual;          // empty, or V x m
  LaplacianKind source_kind = LaplacianKind::Signed;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(eigenvectors.rows()); }
  const Eigen::MatrixXd& dual_vectors() const noexcept { return dual.size() ? dual : eigenvectors; }
};

struct SpectralOptions {
  double tol = 1e-10;                // residual tolerance, relative to max(1, |lambda|)
  std::size_t dense_threshold = 512; // V at or below this uses the dense solver
  std::uint64_t seed = 0x5eed;       // Lanczos start vector
  std::size_t krylov_dim = 0;        // 0 picks max(2m + 40, 60), capped at V
  std::size_t max_restarts = 2000;
};

/// Smallest eigenpairs of a symmetric matrix via thick-restart Lanczos with
/// full reorthogonalization. Raises NoConvergence(restarts) on failure.
/// Column signs follow the first-nonzero-component-positive convention.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> lanczos_smallest(const Eigen::SparseMatrix<double>& a,
                                                             std::size_t m, const SpectralOptions& options);

/// Smallest eigenpairs from a full dense symmetric eigensolve (test oracle and
/// small-V path). Same sign convention.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_smallest(const Eigen::MatrixXd& a, std::size_t m);

SpectralBasis smallest_eigenpairs(const LaplacianOperator& op, std::size_t m,
                                  const SpectralOptions& options = {});

/// Default zero threshold: 1e-8 times the largest computed |eigenvalue|.
double default_zero_tol(const SpectralBasis& basis);

/// Eigenvector of the smallest eigenvalue above zero_tol. When that
/// eigenvalue is numerically repeated a random unit element of its eigenspace
/// is drawn from rng. Raises AllZeroSpectrum when nothing exceeds zero_tol.
Eigen::VectorXd bottom_nonzero_eigenvector(const SpectralBasis& basis, Rng& rng,
                                           std::optional<double> zero_tol = std::nullopt);

/// Flips the sign of each column so its first nonzero entry is positive.
void normalize_signs(Eigen::MatrixXd& vectors);

/// Writes "lambda,x_1..x_V" rows, one per eigenpair.
void write_spectrum_csv(const SpectralBasis& basis, const std::string& path);

}  // namespace sgmbo
