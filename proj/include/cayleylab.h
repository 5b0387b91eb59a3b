/* C interface to the cayleylab core. Every handle is opaque; every call that
 * can fail returns a cl_status and leaves a message for cl_last_error() on
 * the calling thread. Handles are immutable after creation and may be shared
 * across threads. */
#ifndef CAYLEYLAB_H
#define CAYLEYLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CL_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CL_API __attribute__((visibility("default")))
#else
#define CL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_INVALID_ARGUMENT = 1,
  CL_NON_PRIME = 2,
  CL_TOO_LARGE = 3,
  CL_NO_IRREDUCIBLE_FOUND = 4,
  CL_DIVISION_BY_ZERO = 5,
  CL_CONTEXT_MISMATCH = 6,
  CL_BAD_DIVISOR = 7,
  CL_TOO_LARGE_TO_ENUMERATE = 8,
  CL_DIMENSION_MISMATCH = 9,
  CL_GROUP_TOO_LARGE = 10,
  CL_UNSUPPORTED = 11,
  CL_ZERO_TORUS_PARAM = 12,
  CL_UNSUPPORTED_FIELD_DEGREE = 13,
  CL_EMPTY_GENERATORS = 14,
  CL_EMPTY_SET = 15,
  CL_SET_TOO_LARGE = 16,
  CL_NON_GENERIC_CONJUGATOR = 17,
  CL_INCLUSION_FAILED = 18,
  CL_DEGREE_TOO_LARGE = 19,
  CL_NO_PROPER_SUBFIELD = 20,
  CL_UNSUPPORTED_FAMILY = 21,
  CL_NOT_MEMBER = 22,
  CL_BUFFER_TOO_SMALL = 23,
  CL_INTERNAL = 99
} cl_status;

typedef enum cl_family { CL_FAMILY_SL = 0, CL_FAMILY_SP4 = 1, CL_FAMILY_SU3 = 2, CL_FAMILY_CYCLIC = 3 } cl_family;

typedef struct cl_group cl_group;
typedef struct cl_gens cl_gens;
typedef struct cl_poly cl_poly;

CL_API const char* cl_version(void);
CL_API const char* cl_status_name(cl_status s);
/* Message of the last failing call on this thread; "" if none. */
CL_API const char* cl_last_error(void);
CL_API void cl_set_threads(unsigned n);
CL_API unsigned cl_threads(void);

/* ---- groups ---- */

/* m is used only for CL_FAMILY_SL; p, k describe F_{p^k}. For the cyclic
 * family p is the modulus n and m, k are ignored. */
CL_API cl_status cl_group_create(cl_family family, unsigned m, uint64_t p, unsigned k, cl_group** out);
CL_API void cl_group_destroy(cl_group* g);

typedef struct cl_group_info {
  cl_family family;
  unsigned dim;
  uint64_t p;
  unsigned k;
  uint64_t q;
  unsigned twist;
  int enumerable;
} cl_group_info;

CL_API cl_status cl_group_info_get(const cl_group* g, cl_group_info* out);
/* Decimal order, NUL-terminated. Needs len > digits. */
CL_API cl_status cl_group_order(const cl_group* g, char* buf, size_t len);
/* Name such as "SL_2(F_5)". */
CL_API cl_status cl_group_name(const cl_group* g, char* buf, size_t len);
/* Monic field modulus, low to high, k + 1 entries. */
CL_API cl_status cl_field_modulus(const cl_group* g, uint64_t* coeffs, size_t len);

/* Elements cross the boundary as dim*dim row-major entry codes (one residue
 * for the cyclic family). */
CL_API cl_status cl_group_mul(const cl_group* g, const uint64_t* a, const uint64_t* b, uint64_t* out);
CL_API cl_status cl_group_inv(const cl_group* g, const uint64_t* a, uint64_t* out);
CL_API cl_status cl_group_is_member(const cl_group* g, const uint64_t* a, int* out);
CL_API cl_status cl_group_index_of(const cl_group* g, const uint64_t* a, uint64_t* out);
CL_API cl_status cl_group_element_at(const cl_group* g, uint64_t index, uint64_t* out);
/* Uniform element from stream (seed, stream). */
CL_API cl_status cl_group_random(const cl_group* g, uint64_t seed, uint64_t stream, uint64_t* out);

/* Bruhat cell sizes of SL_m (m! cells, lexicographic permutation order) or
 * SU_3 (two cells: Borel, big cell), as decimal strings separated by ','. */
CL_API cl_status cl_bruhat_cell_sizes(const cl_group* g, char* buf, size_t len);

/* ---- generator sets ---- */

CL_API cl_status cl_gens_from_entries(const cl_group* g, size_t count, const uint64_t* entries, cl_gens** out);
/* Two uniform elements drawn from stream (seed, index). */
CL_API cl_status cl_gens_random_pair(const cl_group* g, uint64_t seed, uint64_t index, cl_gens** out);
CL_API void cl_gens_destroy(cl_gens* s);
CL_API size_t cl_gens_count(const cl_gens* s);
CL_API cl_status cl_gens_entries(const cl_gens* s, size_t i, uint64_t* out);

/* ---- spectral ---- */

typedef struct cl_spectral_options {
  int power_method; /* 0: Lanczos, 1: power iteration */
  double tol;
  unsigned max_iter; /* 0 selects the default */
  unsigned restarts;
  uint64_t seed;
} cl_spectral_options;

typedef struct cl_spectral_report {
  double lambda_abs;
  double lambda_signed_max;
  double lambda_signed_min;
  double epsilon;
  unsigned iterations;
  double residual;
  int converged;
} cl_spectral_report;

CL_API void cl_spectral_defaults(cl_spectral_options* opt);
CL_API cl_status cl_spectral(const cl_group* g, const cl_gens* s, const cl_spectral_options* opt,
                             cl_spectral_report* out);

typedef struct cl_bipartite_report {
  int bipartite;
  int perfect_shortcut;
  uint64_t component_size;
} cl_bipartite_report;

CL_API cl_status cl_bipartite(const cl_group* g, const cl_gens* s, cl_bipartite_report* out);

/* ---- random walk ---- */

typedef struct cl_phase_options {
  double kappa;
  unsigned n_max;
  int stop_when_done;
  int stop_at_surrogate;
} cl_phase_options;

typedef struct cl_phase_row {
  unsigned n;
  double l2;
  double linf_dist;
  uint64_t support;
} cl_phase_row;

/* Hitting times are -1 when not reached. */
typedef struct cl_phase_summary {
  double threshold1, threshold2, threshold3, threshold3_raw, surrogate_inv, surrogate_abs;
  int n1, n2, n3, n3_inv, n3_abs;
  int l2_monotone;
  size_t rows;
} cl_phase_summary;

CL_API void cl_phase_defaults(cl_phase_options* opt);
/* Writes up to cap rows; summary->rows holds the full trajectory length. */
CL_API cl_status cl_phase_trace(const cl_group* g, const cl_gens* s, const cl_phase_options* opt, cl_phase_row* rows,
                                size_t cap, cl_phase_summary* out);

/* Exact return probability of the simple random walk on F_2 after n steps,
 * as "num/den"; also its double value. */
CL_API cl_status cl_return_probability(unsigned n, char* buf, size_t len, double* value);

/* ---- non-concentration ---- */

typedef struct cl_nonconc_options {
  double gamma;
  double c0;
  uint64_t samples;
  unsigned xn_degree;
  uint64_t seed;
} cl_nonconc_options;

typedef struct cl_trap_report {
  char family[24];
  unsigned subfield_index;
  unsigned n;
  uint64_t samples;
  uint64_t trapped;
  double trapped_fraction;
  double std_error;
  double subfield_fraction;
  double degenerate_fraction;
  uint64_t discarded;
  double threshold;
  int pass;
} cl_trap_report;

CL_API void cl_nonconc_defaults(cl_nonconc_options* opt);
/* s must hold exactly two generators. *count receives the number of
 * reports; CL_BUFFER_TOO_SMALL if it exceeds cap. */
CL_API cl_status cl_nonconc_verdict(const cl_group* g, const cl_gens* s, const cl_nonconc_options* opt,
                                    cl_trap_report* out, size_t cap, size_t* count);

/* ---- Schwartz-Zippel ---- */

/* Terms: coeffs[t] with exponent row exps[t*nvars .. t*nvars + nvars). */
CL_API cl_status cl_poly_create(const cl_group* g, unsigned nvars, size_t nterms, const uint64_t* coeffs,
                                const unsigned* exps, cl_poly** out);
CL_API void cl_poly_destroy(cl_poly* p);
CL_API unsigned cl_poly_degree(const cl_poly* p);

typedef struct cl_zero_count {
  uint64_t count;
  uint64_t points;
  double bound; /* dDq^{d-1} (affine) or Dq^{-1/d}|G|^r (group, pairs) */
  double ratio;
  int identically_zero;
  int bound_holds;
  int fubini_holds;
} cl_zero_count;

CL_API cl_status cl_sz_affine(const cl_poly* p, cl_zero_count* out);
/* streaming = 1 walks the Bruhat cells instead of the canonical index. */
CL_API cl_status cl_sz_group(const cl_poly* p, const cl_group* g, int streaming, cl_zero_count* out);
CL_API cl_status cl_sz_pairs(const cl_poly* p, const cl_group* g, cl_zero_count* out);

/* ---- approximate groups ---- */

CL_API cl_status cl_energy(const cl_group* g, const uint64_t* set, size_t n, uint64_t* out);
CL_API cl_status cl_product_size(const cl_group* g, const uint64_t* a, size_t na, const uint64_t* b, size_t nb,
                                 uint64_t* out);
CL_API cl_status cl_tripling(const cl_group* g, const uint64_t* set, size_t n, double* out);
CL_API cl_status cl_approx_k(const cl_group* g, const uint64_t* set, size_t n, uint64_t* k, int* valid);
/* Canonical indices of <s>; *count receives the order. */
CL_API cl_status cl_generated_subgroup(const cl_group* g, const cl_gens* s, uint64_t* out, size_t cap,
                                       size_t* count);

/* ---- ping-pong ---- */

typedef struct cl_pingpong_options {
  const char* L; /* rational such as "100" or "3/2"; NULL for the pinned pair */
  unsigned max_len;
  unsigned word_len;
  uint64_t triples;
  uint64_t seed;
} cl_pingpong_options;

typedef struct cl_pingpong_report {
  int inclusions_ok;
  uint64_t inclusion_checks;
  unsigned max_len;
  uint64_t words_checked;
  int all_nontrivial;
  uint64_t region_misses;
  char counterexample[32];
  uint64_t triples_checked;
  uint64_t triples_rejected;
  uint64_t common_fixed_point_failures;
  uint64_t containment_checked;
  uint64_t containment_failures;
} cl_pingpong_report;

CL_API void cl_pingpong_defaults(cl_pingpong_options* opt);
CL_API cl_status cl_pingpong_certify(const cl_pingpong_options* opt, cl_pingpong_report* out);

#ifdef __cplusplus
}
#endif

#endif
