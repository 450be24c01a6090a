#ifndef SGMBO_SGMBO_H
#define SGMBO_SGMBO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SGMBO_API __declspec(dllexport)
#else
#define SGMBO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgmbo_status {
  SGMBO_OK = 0,
  SGMBO_INVALID_ARGUMENT,
  SGMBO_DIMENSION_MISMATCH,
  SGMBO_LENGTH_MISMATCH,
  SGMBO_ISOLATED_NODE,
  SGMBO_NO_CONVERGENCE,
  SGMBO_ALL_ZERO_SPECTRUM,
  SGMBO_DEGENERATE_EIGENVECTOR,
  SGMBO_EMPTY_CLUSTER,
  SGMBO_DEGENERATE_IMAGE,
  SGMBO_NON_POSITIVE_PRICE,
  SGMBO_ZERO_VARIANCE_ROW,
  SGMBO_EMPTY_MATRIX,
  SGMBO_IO,
  SGMBO_PARSE,
  SGMBO_INTERNAL
} sgmbo_status;

typedef enum sgmbo_status_class {
  SGMBO_CLASS_OK = 0,
  SGMBO_CLASS_USAGE = 1,
  SGMBO_CLASS_DATA = 2,
  SGMBO_CLASS_NUMERICAL = 3
} sgmbo_status_class;

typedef struct sgmbo_graph sgmbo_graph;
typedef struct sgmbo_labels sgmbo_labels;
typedef struct sgmbo_constraints sgmbo_constraints;
typedef struct sgmbo_result sgmbo_result;

/* Message of the last failed call on this thread; never NULL. */
SGMBO_API const char* sgmbo_last_error(void);
SGMBO_API const char* sgmbo_status_name(sgmbo_status status);
SGMBO_API sgmbo_status_class sgmbo_status_classify(sgmbo_status status);
SGMBO_API void sgmbo_string_free(char* s);

/* Graphs. Node indices are 0-based. */
SGMBO_API sgmbo_status sgmbo_graph_from_edges(size_t nodes, size_t edges, const size_t* i, const size_t* j,
                                              const double* w, sgmbo_graph** out);
SGMBO_API sgmbo_status sgmbo_graph_read(const char* path, sgmbo_graph** out);
SGMBO_API sgmbo_status sgmbo_graph_write(const sgmbo_graph* g, const char* path, const char* provenance);
SGMBO_API size_t sgmbo_graph_node_count(const sgmbo_graph* g);
SGMBO_API size_t sgmbo_graph_edge_count(const sgmbo_graph* g);
/* Copies the upper-triangle edges (i < j) into caller arrays of edge_count entries. */
SGMBO_API sgmbo_status sgmbo_graph_edges(const sgmbo_graph* g, size_t* i, size_t* j, double* w);
SGMBO_API void sgmbo_graph_free(sgmbo_graph* g);

/* Labels are 1..k. */
SGMBO_API sgmbo_status sgmbo_labels_create(size_t n, const uint32_t* labels, sgmbo_labels** out);
SGMBO_API sgmbo_status sgmbo_labels_read(const char* path, sgmbo_labels** out);
SGMBO_API sgmbo_status sgmbo_labels_write(const sgmbo_labels* l, const char* path);
SGMBO_API size_t sgmbo_labels_size(const sgmbo_labels* l);
SGMBO_API size_t sgmbo_labels_cluster_count(const sgmbo_labels* l);
SGMBO_API const uint32_t* sgmbo_labels_data(const sgmbo_labels* l);
SGMBO_API void sgmbo_labels_free(sgmbo_labels* l);

/* Generators: the ground truth is written to *truth. */
SGMBO_API sgmbo_status sgmbo_generate_ssbm(size_t k, const size_t* cluster_sizes, double sparsity, double noise,
                                           uint64_t seed, sgmbo_graph** graph, sgmbo_labels** truth);
SGMBO_API sgmbo_status sgmbo_generate_ba(size_t k, const size_t* cluster_sizes, size_t v0, size_t nu, double noise,
                                         uint64_t seed, sgmbo_graph** graph, sgmbo_labels** truth);

typedef struct sgmbo_mbo_params {
  double d_tau;
  size_t n_tau;
  size_t m; /* 0: use k */
  double eps_stop;
  size_t max_iters;
  uint64_t seed;
  int divide_d_tau;
} sgmbo_mbo_params;

SGMBO_API void sgmbo_mbo_params_default(sgmbo_mbo_params* p);

/* Constraint builder for a graph of `nodes` nodes and k clusters. */
SGMBO_API sgmbo_status sgmbo_constraints_create(size_t nodes, size_t k, sgmbo_constraints** out);
SGMBO_API sgmbo_status sgmbo_constraints_add_must_link(sgmbo_constraints* c, size_t i, size_t j, double w);
SGMBO_API sgmbo_status sgmbo_constraints_add_cannot_link(sgmbo_constraints* c, size_t i, size_t j, double w);
SGMBO_API sgmbo_status sgmbo_constraints_set_tradeoffs(sgmbo_constraints* c, double lambda_plus, double lambda_minus);
/* Fidelity toward `cluster` (1-based) and avoidance of every other cluster. */
SGMBO_API sgmbo_status sgmbo_constraints_add_fidelity(sgmbo_constraints* c, size_t node, size_t cluster, double w);
SGMBO_API sgmbo_status sgmbo_constraints_add_avoidance(sgmbo_constraints* c, size_t node, size_t cluster, double w);
SGMBO_API sgmbo_status sgmbo_constraints_add_anchor(sgmbo_constraints* c, size_t node, size_t cluster);
/* "combined", "must_only" or "cannot_only". */
SGMBO_API sgmbo_status sgmbo_constraints_set_composition(sgmbo_constraints* c, const char* composition);
/* groups: one id per node, 0 = none. Same-group pairs become must-links and
   cross-group pairs cannot-links, each kept with probability keep_fraction. */
SGMBO_API sgmbo_status sgmbo_constraints_add_group_links(sgmbo_constraints* c, const uint32_t* groups, double weight,
                                                         double keep_fraction, uint64_t seed, int must, int cannot);
SGMBO_API void sgmbo_constraints_free(sgmbo_constraints* c);

/* laplacian: "signed", "signed_random_walk", "signed_symmetric", "positive_part",
   "signless", "unsigned_combinatorial" (also "rw", "sym"). constraints and init may be NULL. */
SGMBO_API sgmbo_status sgmbo_cluster(const sgmbo_graph* g, const char* laplacian, size_t k,
                                     const sgmbo_mbo_params* params, const sgmbo_constraints* constraints,
                                     const sgmbo_labels* init, sgmbo_result** out);
SGMBO_API sgmbo_status sgmbo_result_labels(const sgmbo_result* r, sgmbo_labels** out);
SGMBO_API size_t sgmbo_result_iterations(const sgmbo_result* r);
SGMBO_API int sgmbo_result_converged(const sgmbo_result* r);
SGMBO_API sgmbo_status sgmbo_result_write_trace(const sgmbo_result* r, const char* path);
SGMBO_API void sgmbo_result_free(sgmbo_result* r);

SGMBO_API sgmbo_status sgmbo_kmeans_spectral(const sgmbo_graph* g, size_t k, uint64_t seed, size_t restarts,
                                             sgmbo_labels** out);
SGMBO_API sgmbo_status sgmbo_ari(const sgmbo_labels* pred, const sgmbo_labels* truth, double* out);
SGMBO_API sgmbo_status sgmbo_bnc(const sgmbo_labels* labels, const sgmbo_graph* g, double* out);

/* Experiment sweep from a JSON spec. threads > 0 overrides the spec; master_seed
   is used when override_seed is nonzero. Outputs are freed with sgmbo_string_free. */
SGMBO_API sgmbo_status sgmbo_bench_run(const char* spec_json, size_t threads, int override_seed,
                                       uint64_t master_seed, char** report_json, char** plot_csv);

/* Prices CSV (date column, then one column per instrument) to a complete
   correlation graph of log returns; market_column may be NULL. */
SGMBO_API sgmbo_status sgmbo_correlate(const char* prices_path, const char* market_column, sgmbo_graph** out);

/* Matrix Market counts to a median-centered signed graph. */
SGMBO_API sgmbo_status sgmbo_symmetrize(const char* counts_path, sgmbo_graph** out, double* median,
                                        size_t* dropped_zeros);

typedef struct sgmbo_image sgmbo_image;

SGMBO_API sgmbo_status sgmbo_image_read(const char* path, sgmbo_image** out);
SGMBO_API size_t sgmbo_image_width(const sgmbo_image* img);
SGMBO_API size_t sgmbo_image_height(const sgmbo_image* img);
SGMBO_API void sgmbo_image_free(sgmbo_image* img);
SGMBO_API sgmbo_status sgmbo_image_graph(const sgmbo_image* img, double radius, double decay, sgmbo_graph** out);
/* Replaces every pixel by the mean color of its cluster and writes a PNG. */
SGMBO_API sgmbo_status sgmbo_image_write_segmentation(const sgmbo_image* img, const sgmbo_labels* labels,
                                                      const char* path);
/* Scribble mask: opaque pixels (alpha >= 128) of one RGB color form one
   group. Returns the group id per pixel (0 = none) and the group count. */
SGMBO_API sgmbo_status sgmbo_mask_read(const char* path, size_t width, size_t height, uint32_t** groups,
                                       size_t* group_count);
SGMBO_API void sgmbo_mask_free(uint32_t* groups);

#ifdef __cplusplus
}
#endif

#endif
