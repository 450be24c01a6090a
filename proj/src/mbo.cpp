#include "sgmbo/mbo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgmbo/error.hpp"

namespace sgmbo {

namespace {

void validate_target(const TargetTerm& term, std::size_t v, std::size_t k, const char* name) {
  if (static_cast<std::size_t>(term.target.rows()) != v || static_cast<std::size_t>(term.target.cols()) != k ||
      static_cast<std::size_t>(term.weights.size()) != v) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " target/weights shape mismatch");
  }
  for (std::size_t i = 0; i < v; ++i) {
    const bool row_nonzero = (term.target.row(i).array() != 0.0).any();
    const double w = term.weights[i];
    if (w < 0.0 || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " weights must be finite and nonnegative", i);
    }
    if ((w > 0.0) != row_nonzero) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(name) + " weight must be positive exactly on nonzero target rows", i);
    }
  }
}

void validate_link_graph(const std::optional<SignedGraph>& g, std::size_t v, const char* name) {
  if (!g) return;
  if (g->node_count() != v) throw Error(ErrorCode::DimensionMismatch, std::string(name) + " size mismatch");
  for (const Edge& e : g->edges()) {
    if (e.w < 0.0) throw Error(ErrorCode::InvalidArgument, std::string(name) + " weights must be nonnegative");
  }
}

}  // namespace

CharacteristicMatrix CharacteristicMatrix::from_assignment(const Assignment& a) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(a.k));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.labels[i] < 1 || a.labels[i] > a.k) {
      throw Error(ErrorCode::InvalidArgument, "label out of range at node " + std::to_string(i), i);
    }
    u(static_cast<Eigen::Index>(i), a.labels[i] - 1) = 1.0;
  }
  return CharacteristicMatrix(std::move(u));
}

bool CharacteristicMatrix::is_one_hot() const {
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index c = 0; c < values_.cols(); ++c) {
      const double x = values_(i, c);
      if (x == 1.0) {
        ++ones;
      } else if (x != 0.0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

Assignment CharacteristicMatrix::assignment() const {
  Assignment a;
  a.k = cluster_count();
  a.labels.resize(node_count());
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    Eigen::Index c = 0;
    values_.row(i).maxCoeff(&c);
    a.labels[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c + 1);
  }
  return a;
}

void MboParams::validate(std::size_t node_count) const {
  if (!(d_tau > 0.0) || !std::isfinite(d_tau)) throw Error(ErrorCode::InvalidArgument, "d_tau must be positive");
  if (n_tau == 0) throw Error(ErrorCode::InvalidArgument, "n_tau must be positive");
  if (!(eps_stop > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_stop must be positive");
  if (max_iters == 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  if (m > node_count) throw Error(ErrorCode::InvalidArgument, "basis size m exceeds node count");
}

void ConstraintSet::validate(std::size_t node_count, std::size_t k) const {
  validate_link_graph(must_link, node_count, "must-link");
  validate_link_graph(cannot_link, node_count, "cannot-link");
  if (must_link && !(lambda_plus > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda_plus must be positive");
  if (cannot_link && !(lambda_minus > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda_minus must be positive");
  if (fidelity) validate_target(*fidelity, node_count, k, "fidelity");
  if (avoidance) validate_target(*avoidance, node_count, k, "avoidance");
  for (const auto& [node, cluster] : anchors) {
    if (node >= node_count) throw Error(ErrorCode::InvalidArgument, "anchor node out of range", node);
    if (cluster < 1 || cluster > k) throw Error(ErrorCode::InvalidArgument, "anchor cluster out of range", node);
  }
}

void AnchorMask::apply(Eigen::MatrixXd& u) const {
  for (const auto& [node, cluster] : anchors_) {
    const auto row = static_cast<Eigen::Index>(node);
    u.row(row).setZero();
    u(row, static_cast<Eigen::Index>(cluster - 1)) = 1.0;
  }
}

AnchorMask anchored_propagator(const std::map<std::size_t, std::size_t>& anchors) { return AnchorMask(anchors); }

CharacteristicMatrix init_from_eigenvector(const Eigen::VectorXd& vec, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two clusters");
  if (vec.size() == 0) throw Error(ErrorCode::DegenerateEigenvector, "empty eigenvector");
  const double lo = vec.minCoeff();
  const double hi = vec.maxCoeff();
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateEigenvector, "eigenvector has constant entries");

  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(vec.size(), kk);
  const double width = (hi - lo) / static_cast<double>(k);
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    auto bin = static_cast<Eigen::Index>(std::floor((vec[i] - lo) / width));
    u(i, std::clamp<Eigen::Index>(bin, 0, kk - 1)) = 1.0;
  }
  return CharacteristicMatrix(std::move(u));
}

CharacteristicMatrix init_random(std::size_t v, std::size_t k, Rng& rng) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two clusters");
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < v; ++i) u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(rng.index(k))) = 1.0;
  return CharacteristicMatrix(std::move(u));
}

Eigen::MatrixXd assemble_forcing(const Eigen::MatrixXd& u, const ConstraintSet& cs) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(u.rows(), u.cols());
  if (cs.fidelity) f += cs.fidelity->weights.asDiagonal() * (u - cs.fidelity->target);
  if (cs.avoidance) f += cs.avoidance->weights.asDiagonal() * cs.avoidance->target;
  return f;
}

Eigen::MatrixXd diffusion_step(const SpectralBasis& basis, const Eigen::MatrixXd& u, const MboParams& params,
                               const Eigen::MatrixXd* forcing, const AnchorMask* anchors) {
  if (basis.node_count() != static_cast<std::size_t>(u.rows())) {
    throw Error(ErrorCode::DimensionMismatch, "diffusion_step: basis and U row counts differ");
  }
  if (params.m != 0 && params.m != basis.size()) {
    throw Error(ErrorCode::DimensionMismatch, "diffusion_step: basis size differs from params.m");
  }
  Eigen::MatrixXd w = u;
  if (forcing) {
    if (forcing->rows() != u.rows() || forcing->cols() != u.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "diffusion_step: forcing shape mismatch");
    }
    w -= params.d_tau * *forcing;
  }

  const double step = params.divide_d_tau ? params.d_tau / static_cast<double>(params.n_tau) : params.d_tau;
  const Eigen::VectorXd damping = (1.0 + step * basis.eigenvalues.array()).inverse().matrix();
  const Eigen::MatrixXd& x = basis.eigenvectors;
  const Eigen::MatrixXd& dual = basis.dual_vectors();
  for (std::size_t s = 0; s < params.n_tau; ++s) {
    const Eigen::MatrixXd coeffs = damping.asDiagonal() * (dual.transpose() * w);
    w.noalias() = x * coeffs;
    if (anchors) anchors->apply(w);
  }
  return w;
}

CharacteristicMatrix threshold(const Eigen::MatrixXd& u_half, Rng& rng) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(u_half.rows(), u_half.cols());
  std::vector<Eigen::Index> ties;
  for (Eigen::Index i = 0; i < u_half.rows(); ++i) {
    const double best = u_half.row(i).maxCoeff();
    ties.clear();
    for (Eigen::Index c = 0; c < u_half.cols(); ++c) {
      if (u_half(i, c) == best) ties.push_back(c);
    }
    if (ties.empty()) throw Error(ErrorCode::InvalidArgument, "threshold: non-finite row", static_cast<std::size_t>(i));
    const Eigen::Index pick = ties.size() == 1 ? ties.front() : ties[rng.index(ties.size())];
    u(i, pick) = 1.0;
  }
  return CharacteristicMatrix(std::move(u));
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& x) {
  const Eigen::Index k = x.size();
  std::vector<double> sorted(x.data(), x.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double shift = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    cumsum += sorted[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) shift = t;
  }
  return (x.array() - shift).cwiseMax(0.0).matrix();
}

double stop_ratio(const CharacteristicMatrix& u_next, const CharacteristicMatrix& u_prev) {
  if (u_next.values().rows() != u_prev.values().rows() || u_next.values().cols() != u_prev.values().cols()) {
    throw Error(ErrorCode::DimensionMismatch, "stop_check: shape mismatch");
  }
  const double num = (u_next.values() - u_prev.values()).rowwise().squaredNorm().maxCoeff();
  const double den = u_next.values().rowwise().squaredNorm().maxCoeff();
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

bool stop_check(const CharacteristicMatrix& u_next, const CharacteristicMatrix& u_prev, double eps_stop) {
  return stop_ratio(u_next, u_prev) < eps_stop;
}

SignedGraph apply_must_cannot(const SignedGraph& graph, const ConstraintSet& cs) {
  const std::size_t v = graph.node_count();
  validate_link_graph(cs.must_link, v, "must-link");
  validate_link_graph(cs.cannot_link, v, "cannot-link");
  if (!cs.must_link && !cs.cannot_link) return graph;

  std::vector<Edge> all(graph.edges());
  if (cs.must_link) {
    for (const Edge& e : cs.must_link->edges()) all.push_back({e.i, e.j, cs.lambda_plus * e.w});
  }
  if (cs.cannot_link) {
    for (const Edge& e : cs.cannot_link->edges()) all.push_back({e.i, e.j, -cs.lambda_minus * e.w});
  }
  return SignedGraph::from_triplets(v, all);
}

LaplacianOperator build_run_operator(const SignedGraph& graph, LaplacianKind kind, const ConstraintSet* cs,
                                     Composition composition) {
  const bool has_links = cs && (cs->must_link || cs->cannot_link);
  if (!has_links || composition == Composition::Combined) {
    return build_laplacian(has_links ? apply_must_cannot(graph, *cs) : graph, kind);
  }

  auto [pos, neg] = decompose(graph);
  if (composition == Composition::MustOnly) {
    std::vector<Edge> all(pos.edges());
    if (cs->must_link) {
      for (const Edge& e : cs->must_link->edges()) all.push_back({e.i, e.j, cs->lambda_plus * e.w});
    }
    return build_laplacian(SignedGraph::from_triplets(graph.node_count(), all), kind);
  }

  // CannotOnly: L_bar(A) + Q-(A- + lambda_minus C).
  if (kind != LaplacianKind::Signed && kind != LaplacianKind::SignedSymmetric) {
    throw Error(ErrorCode::InvalidArgument, "cannot-only composition supports signed and signed_symmetric kinds");
  }
  std::vector<Edge> negatives;
  for (const Edge& e : neg.edges()) negatives.push_back({e.i, e.j, -e.w});
  if (cs->cannot_link) {
    for (const Edge& e : cs->cannot_link->edges()) negatives.push_back({e.i, e.j, -cs->lambda_minus * e.w});
  }
  LaplacianOperator base = build_laplacian(graph, LaplacianKind::Signed);
  const LaplacianOperator q =
      build_laplacian(SignedGraph::from_triplets(graph.node_count(), negatives), LaplacianKind::Signless);
  base.matrix += q.matrix;
  base.degrees.d_bar += q.degrees.d_minus;
  base.degrees.d_minus += q.degrees.d_minus;
  return kind == LaplacianKind::SignedSymmetric ? symmetric_normalize(base) : base;
}

CharacteristicMatrix spectral_init(const LaplacianOperator& op, const SpectralBasis& basis, std::size_t k, Rng& rng,
                                   const SpectralOptions& spectral) {
  try {
    return init_from_eigenvector(bottom_nonzero_eigenvector(basis, rng), k);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::AllZeroSpectrum) throw;
  }
  const std::size_t v = op.size();
  std::size_t m = basis.size();
  while (m < v) {
    m = std::min(v, 2 * m);
    const SpectralBasis wider = smallest_eigenpairs(op, m, spectral);
    try {
      return init_from_eigenvector(bottom_nonzero_eigenvector(wider, rng), k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllZeroSpectrum) throw;
    }
  }
  throw Error(ErrorCode::AllZeroSpectrum, "operator has no nonzero eigenvalue");
}

MboResult iterate_mbo(const LaplacianOperator& op, const SpectralBasis& basis, std::size_t k,
                      const MboParams& params, const ConstraintSet* cs, CharacteristicMatrix init, Rng& rng) {
  const std::size_t v = op.size();
  if (init.node_count() != v || init.cluster_count() != k) {
    throw Error(ErrorCode::DimensionMismatch, "initial characteristic matrix has the wrong shape");
  }
  const bool forced = cs && (cs->fidelity || cs->avoidance);
  AnchorMask mask = cs ? AnchorMask(cs->anchors) : AnchorMask();
  const AnchorMask* mask_ptr = mask.empty() ? nullptr : &mask;

  MboResult result;
  CharacteristicMatrix u = std::move(init);
  mask.apply(u.values());
  for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
    Eigen::MatrixXd half;
    if (forced) {
      Eigen::MatrixXd f = assemble_forcing(u.values(), *cs);
      for (const auto& [node, cluster] : cs->anchors) f.row(static_cast<Eigen::Index>(node)).setZero();
      half = diffusion_step(basis, u.values(), params, &f, mask_ptr);
    } else {
      half = diffusion_step(basis, u.values(), params, nullptr, mask_ptr);
    }
    CharacteristicMatrix next = threshold(half, rng);
    mask.apply(next.values());

    TraceEntry entry;
    entry.iter = iter;
    for (Eigen::Index i = 0; i < next.values().rows(); ++i) {
      if (next.values().row(i) != u.values().row(i)) ++entry.changed_rows;
    }
    entry.stop_ratio = stop_ratio(next, u);
    entry.gl_energy = signed_gl_energy(op, next.plus_minus());
    result.trace.push_back(entry);
    result.iterations = iter;

    u = std::move(next);
    if (entry.stop_ratio < params.eps_stop) {
      result.converged = true;
      break;
    }
  }
  result.assignment = u.assignment();
  result.final_u = std::move(u);
  return result;
}

MboResult run_mbo(const SignedGraph& graph, LaplacianKind kind, std::size_t k, const MboParams& params,
                  const ConstraintSet* cs, const CharacteristicMatrix* init, const MboRunOptions& options) {
  const std::size_t v = graph.node_count();
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two clusters");
  if (k > v) throw Error(ErrorCode::InvalidArgument, "more clusters than nodes");
  params.validate(v);
  if (cs) cs->validate(v, k);

  const LaplacianOperator op = build_run_operator(graph, kind, cs, options.composition);
  MboParams run_params = params;
  if (run_params.m == 0) run_params.m = k;

  SpectralOptions spectral = options.spectral;
  spectral.seed = combine_seed(params.seed, spectral.seed);
  const SpectralBasis basis = smallest_eigenpairs(op, run_params.m, spectral);

  Rng rng(params.seed);
  CharacteristicMatrix u = init ? *init : spectral_init(op, basis, k, rng, spectral);
  if (u.node_count() != v || u.cluster_count() != k) {
    throw Error(ErrorCode::DimensionMismatch, "initial characteristic matrix has the wrong shape");
  }
  if (cs && options.seed_init_from_constraints) {
    if (cs->fidelity) {
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(v); ++i) {
        if (cs->fidelity->weights[i] > 0.0) u.values().row(i) = cs->fidelity->target.row(i);
      }
    }
    AnchorMask(cs->anchors).apply(u.values());
  }
  return iterate_mbo(op, basis, k, run_params, cs, std::move(u), rng);
}

}  // namespace sgmbo
