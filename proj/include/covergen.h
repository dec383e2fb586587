/*
 * covergen — public C interface of the covering-design library.
 *
 * A (v,k,t) covering design is a family of k-element blocks over the point
 * set {0,...,v-1} such that every t-element subset lies inside at least one
 * block. The library constructs such designs (random greedy with an early
 * abort, hyperplane coverings of affine space, and induced coverings for
 * large v), verifies them, evaluates classical lower bounds, and runs the
 * density/branching-process experiments.
 *
 * Conventions:
 *   - every function returns a covgen_status; out-parameters are written
 *     only on COVGEN_OK,
 *   - covgen_last_error() returns a thread-local message for the most
 *     recent failure on the calling thread,
 *   - objects created by the library are released with the matching
 *     covgen_*_free function; strings with covgen_string_free,
 *   - all randomness is driven by explicit 64-bit seeds; equal seeds give
 *     bit-identical results on every platform and thread count.
 */
#ifndef COVERGEN_H
#define COVERGEN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covgen_status {
  COVGEN_OK = 0,
  COVGEN_ERR_INVALID_ARGUMENT = 1, /* parameter violates a precondition */
  COVGEN_ERR_OVERFLOW = 2,         /* exact integer result exceeds 64 bits */
  COVGEN_ERR_BUDGET = 3,           /* work or memory cap exceeded */
  COVGEN_ERR_PARSE = 4,            /* malformed design file or CSV */
  COVGEN_ERR_IO = 5,               /* file system failure */
  COVGEN_ERR_CACHE_MISS = 6,       /* missing small-cover cache entry */
  COVGEN_ERR_INTERNAL = 7          /* unexpected condition */
} covgen_status;

/* Message for the last failing call on this thread; never NULL. */
const char* covgen_last_error(void);

/* Library version as "major.minor.patch". */
const char* covgen_version(void);

/* Frees a string returned through a char** out-parameter. NULL is a no-op. */
void covgen_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Designs                                                             */
/* ------------------------------------------------------------------ */

typedef struct covgen_design covgen_design; /* opaque */

void covgen_design_free(covgen_design* d);

covgen_status covgen_design_params(const covgen_design* d, uint32_t* v,
                                   uint32_t* k, uint32_t* t);
covgen_status covgen_design_block_count(const covgen_design* d,
                                        uint64_t* count);
/* Writes the k points of block `index` (ascending) into `out`. */
covgen_status covgen_design_block(const covgen_design* d, uint64_t index,
                                  uint32_t* out);
/* Density = blocks * C(k,t) / C(v,t), as an exact fraction and a double. */
covgen_status covgen_design_density(const covgen_design* d, uint64_t* num,
                                    uint64_t* den, double* value);

/* Text format: one JSON header line {"v":V,"k":K,"t":T,"blocks":N}, then N
 * lines of k ascending space-separated points, canonical block order,
 * trailing newline. Parsing is strict. */
covgen_status covgen_design_to_string(const covgen_design* d, char** out);
covgen_status covgen_design_from_string(const char* text, covgen_design** out);
covgen_status covgen_design_write_file(const covgen_design* d,
                                       const char* path);
covgen_status covgen_design_read_file(const char* path, covgen_design** out);

typedef struct covgen_verify_report {
  int exhaustive;          /* 1 if every t-set was checked */
  int is_covering;         /* 1 only when exhaustively verified clean */
  uint64_t checked;        /* t-sets examined */
  uint64_t uncovered_total; /* uncovered among them */
} covgen_verify_report;

/* Checks all C(v,t) t-subsets; bit_budget 0 selects the default cap and the
 * call fails with COVGEN_ERR_BUDGET when C(v,t) exceeds it. */
covgen_status covgen_verify_exhaustive(const covgen_design* d,
                                       uint64_t bit_budget,
                                       covgen_verify_report* report);
/* Checks `samples` uniformly random t-subsets; never claims is_covering. */
covgen_status covgen_verify_sampled(const covgen_design* d, uint64_t samples,
                                    uint64_t seed,
                                    covgen_verify_report* report);

/* ------------------------------------------------------------------ */
/* Bounds                                                              */
/* ------------------------------------------------------------------ */

/* Schonheim bound: v/k (v-1)/(k-1) ... ceilings nested innermost-first. */
covgen_status covgen_schonheim_bound(uint32_t v, uint32_t k, uint32_t t,
                                     uint64_t* out);
/* ceil(C(v,t) / C(k,t)) — the density-1 block count. */
covgen_status covgen_density_lower_bound(uint32_t v, uint32_t k, uint32_t t,
                                         uint64_t* out);

/* ------------------------------------------------------------------ */
/* Greedy construction                                                 */
/* ------------------------------------------------------------------ */

/* How the packing phase consumes candidate blocks. */
typedef enum covgen_greedy_mode {
  COVGEN_GREEDY_ABORT = 0, /* i.i.d. draws, early abort after the budget */
  COVGEN_GREEDY_SCAN = 1   /* one pass over all C(v,k) blocks, shuffled */
} covgen_greedy_mode;

typedef struct covgen_greedy_stats {
  uint64_t draws_used;
  uint64_t blocks_from_packing;
  uint64_t blocks_from_completion;
  uint64_t uncovered_at_abort;
} covgen_greedy_stats;

/* ceil(beta * v^t * ln v) — the default draw budget for the abort mode. */
covgen_status covgen_default_budget(uint32_t v, uint32_t k, uint32_t t,
                                    double beta, uint64_t* out);

/* Runs the two-phase greedy algorithm: random packing (per `mode`; budget 0
 * means the default) followed by deterministic completion of everything
 * still uncovered. `stats` may be NULL. */
covgen_status covgen_greedy_cover(uint32_t v, uint32_t k, uint32_t t,
                                  uint64_t seed, uint64_t budget,
                                  covgen_greedy_mode mode,
                                  covgen_design** out,
                                  covgen_greedy_stats* stats);

/* Mean uncovered t-set fraction after m = round(tau*C(v,t)/C(k,t)) draws,
 * averaged over `trials` independent runs. */
covgen_status covgen_uncovered_fraction_at_tau(uint32_t v, uint32_t k,
                                               uint32_t t, double tau,
                                               uint64_t trials, uint64_t seed,
                                               unsigned threads, double* mean,
                                               double* std_error,
                                               uint64_t* draws_m);

/* ------------------------------------------------------------------ */
/* Geometry                                                            */
/* ------------------------------------------------------------------ */

/* The (p^t, p^{t-1}, t) covering of AG(t,p) by all hyperplanes:
 * (p^{t+1}-p)/(p-1) blocks. p must be prime, t >= 2. */
covgen_status covgen_ag_covering(uint32_t p, uint32_t t, covgen_design** out);

typedef struct covgen_induced_stats {
  uint32_t ell;                 /* intersection size scale */
  uint64_t prime;               /* chosen p with 4lp <= v-t <= 8lp, p^t > v */
  uint64_t hyperplanes;         /* hyperplanes processed */
  uint64_t trivial_hyperplanes; /* handled by the one-block-per-t-set rule */
} covgen_induced_stats;

/* Parameter selection for the induced construction; fails with
 * COVGEN_ERR_INVALID_ARGUMENT (message suggests greedy) when v is too small
 * for the inequality system. */
covgen_status covgen_select_induced_params(uint32_t v, uint32_t k, uint32_t t,
                                           uint32_t* ell, uint64_t* p);

/* Full induced construction: selects (ell, p), prepares the small-cover
 * cache (loaded from cache_dir when given, freshly built otherwise, and
 * written back to cache_dir), embeds v random points into AG(t,p) and
 * relabels a cached covering across every hyperplane intersection.
 * `cache_dir` may be NULL; `stats` may be NULL. */
covgen_status covgen_induced_cover(uint32_t v, uint32_t k, uint32_t t,
                                   uint64_t seed, const char* cache_dir,
                                   covgen_design** out,
                                   covgen_induced_stats* stats);

/* ------------------------------------------------------------------ */
/* Analysis                                                            */
/* ------------------------------------------------------------------ */

/* Closed-form survival probability (tau*D + 1)^{-1/D}. */
covgen_status covgen_p_tau(double tau, uint32_t D, double* out);

/* Monte Carlo estimate of p_tau from the idealized branching process.
 * max_nodes 0 selects the default per-trial cap. */
covgen_status covgen_tree_estimate(double tau, uint32_t D, uint64_t trials,
                                   uint64_t max_nodes, uint64_t seed,
                                   unsigned threads, double* estimate,
                                   double* std_error);

typedef enum covgen_budget_rule {
  COVGEN_RULE_EARLY_ABORT = 0, /* ceil(beta * v^t * ln v) draws */
  COVGEN_RULE_FIXED = 1,       /* exactly `fixed` draws */
  COVGEN_RULE_SCAN = 2         /* shuffled full scan (beta/fixed ignored) */
} covgen_budget_rule;

/* Runs `trials` greedy covers per v and renders the aggregate table as CSV
 * (header v,k,t,trials,mean_density,stderr,mean_blocks,seed). */
covgen_status covgen_density_experiment(uint32_t k, uint32_t t,
                                        const uint32_t* v_list, size_t n_v,
                                        uint64_t trials,
                                        covgen_budget_rule rule, double beta,
                                        uint64_t fixed, uint64_t seed,
                                        unsigned threads, char** csv_out);

/* Least-squares fit of ln(density-1) against ln v over v_lo <= v <= v_hi of
 * a CSV produced by covgen_density_experiment; returns the JSON object
 * {"k":K,"t":T,"alpha":A,"residual":R,"v_lo":L,"v_hi":H}. */
covgen_status covgen_fit_alpha_csv(const char* csv_text, uint32_t v_lo,
                                   uint32_t v_hi, char** json_out);

/* Clique statistic of the uncovered hypergraph after an aborted packing:
 * fraction of uncovered t-sets contained in no k-set whose C(k,t) t-subsets
 * are all uncovered. `applicable` is 0 when nothing is uncovered (the
 * fraction is then meaningless and set to 0). */
covgen_status covgen_clique_statistic(uint32_t v, uint32_t k, uint32_t t,
                                      uint64_t seed, uint64_t budget,
                                      covgen_greedy_mode mode,
                                      uint64_t* uncovered_count,
                                      int* applicable, double* fraction);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COVERGEN_H */
