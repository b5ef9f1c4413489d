/*
 * nsbox - no-signaling box toolkit
 *
 * C interface to the nsbox core: bipartite no-signaling boxes in exact
 * rational arithmetic, CHSH evaluation and classification, classical-polytope
 * membership with checkable certificates, PR-box random-access-code /
 * oblivious-transfer protocols (exact and seeded Monte Carlo), and the
 * information-causality functional with Tsirelson-threshold recovery.
 *
 * Conventions:
 *  - Every fallible function returns nsbox_status; NSBOX_OK is 0. On failure
 *    nsbox_last_error() returns a thread-local message for the failing call.
 *  - Objects are opaque handles released with their matching _free function.
 *  - Exact probabilities and biases travel as rational strings "p/q" (or "p"
 *    for integers). Strings returned through char** are heap-allocated and
 *    must be released with nsbox_string_free.
 *  - Scenarios are int32_t[4] = {nX, nY, nA, nB}.
 */

#ifndef NSBOX_H
#define NSBOX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NSBOX_API __declspec(dllexport)
#else
#define NSBOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nsbox_status {
    NSBOX_OK = 0,
    NSBOX_ERROR_INVALID_ARGUMENT = 1,
    NSBOX_ERROR_PARSE = 2,
    NSBOX_ERROR_VALIDATION = 3,
    NSBOX_ERROR_CAP_EXCEEDED = 4,
    NSBOX_ERROR_UNSUPPORTED = 5,
    NSBOX_ERROR_IO = 6,
    NSBOX_ERROR_INTERNAL = 7
} nsbox_status;

typedef struct nsbox_box nsbox_box;               /* probability point P(a,b|x,y) */
typedef struct nsbox_cert nsbox_cert;             /* classical-membership certificate */
typedef struct nsbox_rac_result nsbox_rac_result; /* random-access-code run results */
typedef struct nsbox_dist nsbox_dist;             /* joint distribution over named variables */

NSBOX_API const char* nsbox_version(void);
NSBOX_API const char* nsbox_status_name(nsbox_status status);
/* Message associated with the most recent failing call on this thread. */
NSBOX_API const char* nsbox_last_error(void);

NSBOX_API void nsbox_string_free(char* s);
NSBOX_API void nsbox_box_free(nsbox_box* box);
NSBOX_API void nsbox_cert_free(nsbox_cert* cert);
NSBOX_API void nsbox_rac_result_free(nsbox_rac_result* result);
NSBOX_API void nsbox_dist_free(nsbox_dist* dist);

/* ---- boxes ------------------------------------------------------------- */

NSBOX_API nsbox_status nsbox_box_pr(nsbox_box** out);
NSBOX_API nsbox_status nsbox_box_white_noise(nsbox_box** out);
/* bias is a rational string in [-1, 1], e.g. "1/2". */
NSBOX_API nsbox_status nsbox_box_isotropic(const char* bias, nsbox_box** out);
/* f has scenario[0] entries in [0, scenario[2]); g has scenario[1] entries
 * in [0, scenario[3]). */
NSBOX_API nsbox_status nsbox_box_local_deterministic(const int32_t scenario[4], const int32_t* f,
                                                     const int32_t* g, nsbox_box** out);
/* Entrywise convex combination; weights are rational strings summing to 1. */
NSBOX_API nsbox_status nsbox_box_mix(const nsbox_box* const* boxes, const char* const* weights,
                                     size_t count, nsbox_box** out);
/* JSON schema: {"scenario":[nX,nY,nA,nB],"table":["p/q",...]} with the table
 * dense row-major over (x, y, a, b). */
NSBOX_API nsbox_status nsbox_box_from_json(const char* json, nsbox_box** out);
NSBOX_API nsbox_status nsbox_box_to_json(const nsbox_box* box, char** out);

NSBOX_API nsbox_status nsbox_box_scenario(const nsbox_box* box, int32_t out[4]);
NSBOX_API nsbox_status nsbox_box_entry(const nsbox_box* box, int32_t x, int32_t y, int32_t a,
                                       int32_t b, char** out);

typedef struct nsbox_validation {
    int32_t nonnegative;         /* booleans */
    int32_t normalized;
    int32_t no_signaling;
    int64_t first_negative;      /* first violating index, -1 when the check passes */
    int64_t first_unnormalized;
    int64_t first_signaling;
} nsbox_validation;

/* Reports all three checks; never fails on malformed tables. */
NSBOX_API nsbox_status nsbox_box_validate(const nsbox_box* box, nsbox_validation* out);

/* CHSH winning probability as a rational string; (2,2,2,2) only. */
NSBOX_API nsbox_status nsbox_box_chsh_value(const nsbox_box* box, char** out);

typedef enum nsbox_tier {
    NSBOX_TIER_CLASSICAL = 0,
    NSBOX_TIER_QUANTUM_COMPATIBLE = 1,
    NSBOX_TIER_SUPERQUANTUM = 2
} nsbox_tier;

/* Boundaries are inclusive downward; the Tsirelson comparison is exact. */
NSBOX_API nsbox_status nsbox_box_classify(const nsbox_box* box, char** value_out,
                                          nsbox_tier* tier_out);

/* ---- geometry ---------------------------------------------------------- */

NSBOX_API nsbox_status nsbox_local_vertex_count(const int32_t scenario[4], uint64_t* out);
/* Vertices in lexicographic (f, g) order. */
NSBOX_API nsbox_status nsbox_local_vertex(const int32_t scenario[4], uint64_t index,
                                          nsbox_box** out);
NSBOX_API nsbox_status nsbox_ns_dimension(const int32_t scenario[4], int64_t* full_out,
                                          int64_t* ns_out);

/* Exact feasibility of box in the convex hull of local-deterministic
 * vertices. The certificate is verified internally before it is returned. */
NSBOX_API nsbox_status nsbox_classical_membership(const nsbox_box* box, nsbox_cert** out);
NSBOX_API int32_t nsbox_cert_feasible(const nsbox_cert* cert);
/* {"status":"feasible","weights":[[vertexIndex,"p/q"],...]} or
 * {"status":"infeasible","witness":["p/q",...]} (affine constant last). */
NSBOX_API nsbox_status nsbox_cert_to_json(const nsbox_cert* cert, char** out);

/* ---- protocols --------------------------------------------------------- */

/* One oblivious-transfer round over the box: Alice encodes (x0, x1) into one
 * transmitted bit without seeing k; out receives Bob's decoded bit. Draws are
 * addressed by (seed, trial), so replays are exact. */
NSBOX_API nsbox_status nsbox_run_ot(const nsbox_box* box, int32_t x0, int32_t x1, int32_t k,
                                    uint64_t seed, uint64_t trial, int32_t* out);
/* All 8 input combinations, `trials` rounds each; out_successes has 8 entries
 * ordered (x0, x1, k) with k fastest. */
NSBOX_API nsbox_status nsbox_ot_exhaustive(const nsbox_box* box, uint64_t trials, uint64_t seed,
                                           uint64_t out_successes[8]);

/* Concatenated random-access code: depth n encodes 2^n bits through 2^n - 1
 * box pairs. boxes is either one box (reused) or 2^n - 1 per-pair boxes.
 * Exact per-bit probabilities are included whenever computable; trials > 0
 * adds seeded empirical counts (every trial decodes every bit index).
 * transcript_out, when non-NULL, receives one line per trial. */
NSBOX_API nsbox_status nsbox_rac_run(const nsbox_box* const* boxes, size_t box_count,
                                     int32_t depth, uint64_t trials, uint64_t seed, int32_t jobs,
                                     char** transcript_out, nsbox_rac_result** out);

NSBOX_API uint64_t nsbox_rac_bit_count(const nsbox_rac_result* result);
NSBOX_API int32_t nsbox_rac_has_exact(const nsbox_rac_result* result);
NSBOX_API nsbox_status nsbox_rac_exact_success(const nsbox_rac_result* result, uint64_t bit,
                                               char** out);
NSBOX_API nsbox_status nsbox_rac_empirical(const nsbox_rac_result* result, uint64_t bit,
                                           uint64_t* successes_out, uint64_t* trials_out);
NSBOX_API double nsbox_rac_ic_sum(const nsbox_rac_result* result);
NSBOX_API int32_t nsbox_rac_ic_violated(const nsbox_rac_result* result);
/* {"n":...,"trials":...,"seed":...,"perBit":[{"k":...,"exact":"p/q",
 *  "successes":...,"trials":...}],"icSum":...,"violated":...} */
NSBOX_API nsbox_status nsbox_rac_result_to_json(const nsbox_rac_result* result, char** out);

/* ---- information theory ------------------------------------------------ */

NSBOX_API nsbox_status nsbox_binary_entropy(double p, double* out);

typedef struct nsbox_ic_evaluation {
    int64_t depth;
    double bias;
    double per_term_bits; /* 1 - h((1+E^n)/2) */
    double sum;           /* 2^n * per_term_bits; saturates, log_sum2 is authoritative */
    double log_sum2;
    double bound;         /* 1 transmitted bit */
    int32_t violated;     /* sum > bound */
} nsbox_ic_evaluation;

NSBOX_API nsbox_status nsbox_ic_sum(int64_t depth, double bias, nsbox_ic_evaluation* out);
/* Smallest violating bias over depths <= n_max, bisected to 1e-7. */
NSBOX_API nsbox_status nsbox_tsirelson_threshold(int64_t n_max, double* out);
NSBOX_API nsbox_status nsbox_quadratic_bound(const double* biases, size_t count, double* value_out,
                                             int32_t* satisfied_out);

/* ---- joint distributions ----------------------------------------------- */

/* JSON schema: {"vars":[{"name":...,"size":...},...],"probs":[...]} with
 * probs row-major, last variable fastest. */
NSBOX_API nsbox_status nsbox_dist_from_json(const char* json, nsbox_dist** out);
NSBOX_API nsbox_status nsbox_dist_to_json(const nsbox_dist* dist, char** out);
NSBOX_API nsbox_status nsbox_dist_entropy(const nsbox_dist* dist, const char* const* vars,
                                          size_t var_count, double* out);
NSBOX_API nsbox_status nsbox_dist_mutual_information(const nsbox_dist* dist,
                                                     const char* const* lhs, size_t lhs_count,
                                                     const char* const* rhs, size_t rhs_count,
                                                     double* out);
/* kernel is rows x cols row-major, rows = target alphabet, rows sum to 1. */
NSBOX_API nsbox_status nsbox_dist_apply_channel(const nsbox_dist* dist, const char* target,
                                                const double* kernel, size_t rows, size_t cols,
                                                nsbox_dist** out);
/* Evaluates the information-causality proof-chain inequalities on a classical
 * joint; weights is NULL or w0 followed by one weight per input. Returns the
 * report as JSON. */
NSBOX_API nsbox_status nsbox_ic_proof_chain(const nsbox_dist* dist, const char* const* input_vars,
                                            size_t input_count, const char* const* guess_vars,
                                            size_t guess_count, const char* const* blackbox_vars,
                                            size_t blackbox_count, const char* const* message_vars,
                                            size_t message_count, double message_bits,
                                            const double* weights, char** report_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NSBOX_H */
