#ifndef ATOMEMB_H
#define ATOMEMB_H

/* C interface to the atomic-embeddability library. All functions return an
 * error code (AE_OK on success); results come back through out-parameters.
 * Returned strings are heap-allocated and must be released with
 * ae_string_free. Handles are opaque and freed with their matching
 * ae_*_free. On failure ae_last_error() describes the most recent error of
 * the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ae_instance ae_instance;     /* simplicial map G -> H */
typedef struct ae_clustered ae_clustered;   /* clustered-planarity instance */
typedef struct ae_polyhedron ae_polyhedron; /* 2-dimensional polyhedron */

enum {
  AE_OK = 0,
  AE_EINVAL = 1,    /* invalid argument or precondition violation */
  AE_EPARSE = 2,    /* malformed input text */
  AE_EINTERNAL = 3, /* internal invariant failure */
};

/* decide() outcomes */
enum {
  AE_REASON_POSITIVE = 0,
  AE_REASON_NONPLANAR_LOCAL = 1,
  AE_REASON_INCOMPATIBLE_ROTATIONS = 2,
  AE_REASON_TOROIDAL_MISMATCH = 3,
  AE_REASON_UNSAT_2SAT = 4,
};

/* oracle verdicts */
enum {
  AE_VERDICT_NEGATIVE = 0,
  AE_VERDICT_POSITIVE = 1,
  AE_VERDICT_OVERFLOW = 2, /* search limits hit; no verdict */
};

const char* ae_last_error(void);
void ae_string_free(char* s);

/* ---- instances ---------------------------------------------------------- */

int ae_instance_parse(const char* json, ae_instance** out);
void ae_instance_free(ae_instance* inst);
int ae_instance_to_json(const ae_instance* inst, char** json_out);

/* *error_out is NULL when the instance is valid, else the first problem. */
int ae_instance_validate(const ae_instance* inst, char** error_out);

/* Suppress + split hooks to fixpoint (a normal instance). */
int ae_normalize(const ae_instance* inst, ae_instance** out);

typedef struct {
  int embeddable;       /* 0 / 1 */
  int reason;           /* AE_REASON_* */
  uint64_t ops;         /* elementary operations after preprocessing */
  uint64_t initial_phi; /* potential after preprocessing */
  uint64_t budget;      /* 64 * (phi + number of degree->=3 vertices) */
  uint64_t iterations;  /* main-loop iterations */
} ae_decision;

/* detail_out (optional, may be NULL): atom/pipe/component behind a negative
 * verdict. witness_out (optional): the rewrite trace as JSON lines. */
int ae_decide(const ae_instance* inst, ae_decision* decision_out,
              char** detail_out, char** witness_out);

typedef struct {
  uint64_t max_systems_per_graph;
  uint64_t max_combinations;
  uint64_t time_budget_ms;
} ae_oracle_limits;

void ae_oracle_limits_default(ae_oracle_limits* limits);

int ae_oracle_decide(const ae_instance* inst, const ae_oracle_limits* limits,
                     int* verdict_out, uint64_t* nodes_out);

/* One DOT graph per local graph, concatenated. */
int ae_export_dot(const ae_instance* inst, char** dot_out);

/* ---- clustered planarity and thickenability ------------------------------ */

int ae_clustered_parse(const char* json, ae_clustered** out);
void ae_clustered_free(ae_clustered* ci);
int ae_clustered_to_json(const ae_clustered* ci, char** json_out);
int ae_clustered_validate(const ae_clustered* ci, char** error_out);

int ae_polyhedron_parse(const char* json, ae_polyhedron** out);
void ae_polyhedron_free(ae_polyhedron* p);
int ae_polyhedron_to_json(const ae_polyhedron* p, char** json_out);
int ae_polyhedron_validate(const ae_polyhedron* p, char** error_out);

int ae_reduce_to_thickenability(const ae_instance* inst, ae_polyhedron** out);
int ae_reduce_from_thickenability(const ae_polyhedron* p, ae_instance** out);
int ae_reduce_from_cplanarity(const ae_clustered* ci, ae_instance** out);

/* Brute-force thickenability check over vertex links. */
int ae_neuwirth_check(const ae_polyhedron* p, const ae_oracle_limits* limits,
                      int* verdict_out, uint64_t* nodes_out);

/* ---- seeded generators ---------------------------------------------------- */

int ae_gen_random(uint64_t seed, uint64_t g_vertices, uint64_t h_atoms,
                  double density, ae_instance** out);
int ae_gen_toroidal(const int* windings, size_t count, ae_instance** out);
int ae_gen_cplan(uint64_t seed, uint64_t clusters, uint64_t vertices,
                 double density, ae_clustered** out);

#ifdef __cplusplus
}
#endif

#endif /* ATOMEMB_H */
