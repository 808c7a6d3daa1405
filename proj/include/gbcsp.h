/*
 * C API for the gbcsp toolkit: random Boolean constraint satisfaction
 * instances and the geometry of their solution spaces.
 *
 * All handles are opaque; every function that can fail returns a
 * gbcsp_status and leaves a message readable through gbcsp_last_error()
 * (thread local). Strings returned through char** are owned by the caller
 * and released with gbcsp_string_free().
 */
#ifndef GBCSP_H
#define GBCSP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbcsp_status {
    GBCSP_OK = 0,
    GBCSP_ERR_INVALID_ARGUMENT = 1, /* bad arguments or violated preconditions */
    GBCSP_ERR_PARSE = 2,            /* malformed text input */
    GBCSP_ERR_UNSUPPORTED = 3,      /* operation undefined for this input */
    GBCSP_ERR_TOO_LARGE = 4,        /* engineering bound exceeded */
    GBCSP_ERR_INTERNAL = 5
} gbcsp_status;

typedef struct gbcsp_relset gbcsp_relset;       /* constraint set (uniform arity) */
typedef struct gbcsp_formula gbcsp_formula;     /* instance */
typedef struct gbcsp_solutions gbcsp_solutions; /* enumerated solution set */

const char* gbcsp_version(void);
const char* gbcsp_last_error(void);
void gbcsp_string_free(char* s);

/* ---- constraint sets -------------------------------------------------- */

/* Built-in sets: "2sat", "ksat:<k>", "xor2", "1in:<k>". */
gbcsp_status gbcsp_relset_builtin(const char* name, gbcsp_relset** out);
/* gbcsp relation records ("r <name> <k> <s> <rows...>" lines). */
gbcsp_status gbcsp_relset_parse(const char* text, gbcsp_relset** out);
void gbcsp_relset_free(gbcsp_relset* set);
int gbcsp_relset_arity(const gbcsp_relset* set);
long long gbcsp_relset_size(const gbcsp_relset* set);
gbcsp_status gbcsp_relset_emit(const gbcsp_relset* set, char** text_out);

/* Threshold-type classification; JSON with verdict and witness. */
gbcsp_status gbcsp_classify(const gbcsp_relset* set, char** json_out);

/* ---- formulas ---------------------------------------------------------- */

/* format: "gbcsp", "dimacs", or NULL to sniff. */
gbcsp_status gbcsp_formula_parse(const char* text, const char* format, gbcsp_formula** out);
gbcsp_status gbcsp_formula_emit(const gbcsp_formula* phi, const char* format, char** text_out);
void gbcsp_formula_free(gbcsp_formula* phi);
long long gbcsp_formula_num_vars(const gbcsp_formula* phi);
long long gbcsp_formula_num_constraints(const gbcsp_formula* phi);

/* ---- random instances -------------------------------------------------- */

/*
 * model: "p" (each ordered tuple/relation pair independently, param = p),
 *        "count" (param = m distinct pairs), "multiset" (param = m, with
 *        replacement), "density" (counting model, m = round(param * n)).
 * Deterministic for a fixed seed.
 */
gbcsp_status gbcsp_generate(const gbcsp_relset* set, const char* model, long long n, double param,
                            uint64_t seed, int dedupe_symmetric, gbcsp_formula** out);
double gbcsp_expected_constraint_count(const gbcsp_relset* set, long long n, double p);
gbcsp_status gbcsp_density_to_p(const gbcsp_relset* set, long long n, double density,
                                double* p_out);

/* ---- solving and solution-space analysis ------------------------------- */

/* *sat_out = 1 with the assignment bits, or 0 with *assignment_out = NULL. */
gbcsp_status gbcsp_solve_one(const gbcsp_formula* phi, uint64_t polarity_seed, int* sat_out,
                             char** assignment_out);

gbcsp_status gbcsp_enumerate(const gbcsp_formula* phi, int workers, gbcsp_solutions** out);
void gbcsp_solutions_free(gbcsp_solutions* sols);
long long gbcsp_solutions_count(const gbcsp_solutions* sols);
gbcsp_status gbcsp_solutions_get(const gbcsp_solutions* sols, long long index, char** bits_out);

/* Cluster decomposition at Hamming adjacency threshold f (f <= 0 uses the
 * default ceil(log2(n)^2)). */
gbcsp_status gbcsp_clusters(const gbcsp_solutions* sols, long long f, char** json_out);

/* Overlap histogram; f >= 0 adds the within/cross-cluster split at that
 * threshold; format "csv" or "json". */
gbcsp_status gbcsp_overlap_histogram(const gbcsp_solutions* sols, long long f, const char* format,
                                     char** out);

/* q and band are rational strings ("0.3", "3/10"); band NULL = 1/sqrt(n). */
gbcsp_status gbcsp_decide_q_overlap(const gbcsp_formula* phi, const char* q, const char* band,
                                    int strict_distinct, char** json_out);

/* ---- implication-graph geometry (arity-2 clausal formulas) ------------- */

gbcsp_status gbcsp_twosat_diag(const gbcsp_formula* phi, char** json_out);
gbcsp_status gbcsp_twosat_path(const gbcsp_formula* phi, const char* a_bits, const char* b_bits,
                               long long step_budget, char** json_out);
gbcsp_status gbcsp_twosat_pair(const gbcsp_formula* phi, const char* q, const char* band,
                               int flip_literal_reading, int strict_distinct, char** json_out);

/* ---- Monte Carlo scans -------------------------------------------------- */

typedef struct gbcsp_scan_row {
    long long n;
    double density;
    long long trials;
    long long successes;
    long long unknown;
    double p_hat;
    double ci_lo;
    double ci_hi;
    uint64_t seed;
} gbcsp_scan_row;

/* Called once per finished probe, in a deterministic order. */
typedef void (*gbcsp_scan_row_fn)(const gbcsp_scan_row* row, void* user);

/* q NULL probes satisfiability, otherwise the q-overlap property. */
gbcsp_status gbcsp_scan_grid(const gbcsp_relset* set, const char* q, const char* band, long long n,
                             double density_lo, double density_hi, int points, long long trials,
                             uint64_t seed, int workers, gbcsp_scan_row_fn on_row, void* user,
                             char** json_out);

gbcsp_status gbcsp_find_threshold(const gbcsp_relset* set, const char* q, const char* band,
                                  long long n, double target, double density_lo, double density_hi,
                                  long long trials_per_probe, double tol, uint64_t seed,
                                  int workers, gbcsp_scan_row_fn on_row, void* user,
                                  char** json_out);

gbcsp_status gbcsp_scan_width(const gbcsp_relset* set, const char* q, const char* band, long long n,
                              double epsilon, double density_lo, double density_hi,
                              long long trials_per_probe, double tol, uint64_t seed, int workers,
                              gbcsp_scan_row_fn on_row, void* user, char** json_out);

/* q_grid: comma-separated rationals, e.g. "0.1,0.2,0.3". */
gbcsp_status gbcsp_scan_wcurve(const gbcsp_relset* set, const char* q_grid, const char* band,
                               long long n, double target, double density_lo, double density_hi,
                               long long trials_per_probe, double tol, uint64_t seed, int workers,
                               gbcsp_scan_row_fn on_row, void* user, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GBCSP_H */
