#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgmbo/laplacian.hpp"
#include "sgmbo/rng.hpp"
#include "sgmbo/spectral.hpp"

namespace sgmbo {

/// Cluster labels in 1..k, one per node.
struct Assignment {
  std::vector<std::uint32_t> labels;
  std::size_t k = 0;

  std::size_t size() const noexcept { return labels.size(); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// V x K node-cluster weight matrix. Rows are one-hot after initialization
/// and after every threshold step.
class CharacteristicMatrix {
 public:
  CharacteristicMatrix() = default;
  explicit CharacteristicMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  static CharacteristicMatrix from_assignment(const Assignment& a);

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cluster_count() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::MatrixXd& values() noexcept { return values_; }

  bool is_one_hot() const;
  /// Requires one-hot rows.
  Assignment assignment() const;
  /// The {-1,1} representation 2U - 1.
  Eigen::MatrixXd plus_minus() const { return 2.0 * values_.array() - 1.0; }

 private:
  Eigen::MatrixXd values_;
};

struct MboParams {
  double d_tau = 0.1;
  std::size_t n_tau = 3;
  std::size_t m = 0;  // 0 means "use K"
  double eps_stop = 1e-7;
  std::size_t max_iters = 300;
  std::uint64_t seed = 0;
  // true: resolvent (I + dtau/Ntau Lambda)^-1 applied Ntau times.
  // false: (I + dtau Lambda)^-1 applied Ntau times, as in the pseudocode listing.
  bool divide_d_tau = true;

  void validate(std::size_t node_count) const;
};

/// Diagonal-weighted target for the fidelity or avoidance forcing term.
struct TargetTerm {
  Eigen::MatrixXd target;   // V x K, rows one-hot or zero
  Eigen::VectorXd weights;  // V, positive exactly on nonzero target rows
};

struct ConstraintSet {
  std::optional<SignedGraph> must_link;    // nonnegative weights
  double lambda_plus = 1.0;
  std::optional<SignedGraph> cannot_link;  // nonnegative weights
  double lambda_minus = 1.0;
  std::optional<TargetTerm> fidelity;
  std::optional<TargetTerm> avoidance;
  std::map<std::size_t, std::size_t> anchors;  // node (0-based) -> cluster (1-based)

  bool empty() const noexcept {
    return !must_link && !cannot_link && !fidelity && !avoidance && anchors.empty();
  }
  /// Checks shapes, signs and the weight/target support rule.
  void validate(std::size_t node_count, std::size_t k) const;
};

/// Overwrites anchor rows with their one-hot cluster vector. Applying it
/// after each propagator application is the same as replacing the anchor
/// rows of the propagator by identity rows.
class AnchorMask {
 public:
  AnchorMask() = default;
  explicit AnchorMask(const std::map<std::size_t, std::size_t>& anchors)
      : anchors_(anchors.begin(), anchors.end()) {}

  bool empty() const noexcept { return anchors_.empty(); }
  void apply(Eigen::MatrixXd& u) const;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> anchors_;
};

AnchorMask anchored_propagator(const std::map<std::size_t, std::size_t>& anchors);

/// Bins vec into k equal-width intervals over [min, max]; the top edge is
/// inclusive. Raises DegenerateEigenvector when all entries are equal.
CharacteristicMatrix init_from_eigenvector(const Eigen::VectorXd& vec, std::size_t k);

/// Independent uniform cluster per node.
CharacteristicMatrix init_random(std::size_t v, std::size_t k, Rng& rng);

/// Fidelity/avoidance forcing R_fi (U - U_hat) + R_av U_tilde.
Eigen::MatrixXd assemble_forcing(const Eigen::MatrixXd& u, const ConstraintSet& cs);

/// (U - dtau * forcing), then the reduced resolvent applied n_tau times.
/// The anchor mask, when given, is applied after every application.
Eigen::MatrixXd diffusion_step(const SpectralBasis& basis, const Eigen::MatrixXd& u, const MboParams& params,
                               const Eigen::MatrixXd* forcing = nullptr, const AnchorMask* anchors = nullptr);

/// Row-wise argmax to one-hot; exact ties are broken uniformly with rng.
CharacteristicMatrix threshold(const Eigen::MatrixXd& u_half, Rng& rng);

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& x);

/// max_i |u_next_i - u_prev_i|^2 / max_i |u_next_i|^2
double stop_ratio(const CharacteristicMatrix& u_next, const CharacteristicMatrix& u_prev);
bool stop_check(const CharacteristicMatrix& u_next, const CharacteristicMatrix& u_prev, double eps_stop);

/// Returns A with A+ -> A+ + lambda_plus M and A- -> A- + lambda_minus C.
SignedGraph apply_must_cannot(const SignedGraph& graph, const ConstraintSet& cs);

/// How must/cannot-links enter the operator.
enum class Composition {
  Combined,       // Laplacian of the edited graph
  MustOnly,       // positive-part Laplacian of A+ + lambda_plus M
  CannotOnly,     // signed Laplacian of A plus signless Laplacian of A- + lambda_minus C
};

struct TraceEntry {
  std::size_t iter = 0;
  std::size_t changed_rows = 0;
  double gl_energy = 0.0;
  double stop_ratio = 0.0;
};

struct MboRunOptions {
  Composition composition = Composition::Combined;
  SpectralOptions spectral;
  bool seed_init_from_constraints = true;  // anchor/fidelity rows of the initial matrix follow the constraints
};

struct MboResult {
  Assignment assignment;
  std::vector<TraceEntry> trace;
  std::size_t iterations = 0;
  bool converged = false;  // false when max_iters was reached
  CharacteristicMatrix final_u;
};

/// Operator the run would diffuse with: constraint edits and composition applied.
LaplacianOperator build_run_operator(const SignedGraph& graph, LaplacianKind kind, const ConstraintSet* cs,
                                     Composition composition);

/// Spectral initialization: bins the bottom nonzero eigenvector of `op`.
/// Extends the basis when the supplied one has no nonzero eigenvalue.
CharacteristicMatrix spectral_init(const LaplacianOperator& op, const SpectralBasis& basis, std::size_t k, Rng& rng,
                                   const SpectralOptions& spectral);

/// MBO iterations on a precomputed operator and basis.
MboResult iterate_mbo(const LaplacianOperator& op, const SpectralBasis& basis, std::size_t k,
                      const MboParams& params, const ConstraintSet* cs, CharacteristicMatrix init, Rng& rng);

/// Full pipeline: constraint edits, Laplacian, basis, spectral or supplied
/// initialization, and iteration until the stop criterion or max_iters.
MboResult run_mbo(const SignedGraph& graph, LaplacianKind kind, std::size_t k, const MboParams& params,
                  const ConstraintSet* cs = nullptr, const CharacteristicMatrix* init = nullptr,
                  const MboRunOptions& options = {});

}  // namespace sgmbo
