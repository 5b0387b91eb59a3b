/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cayleylab.h"

static int failures = 0;
static int checks = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    ++checks;                                                     \
    if (!(cond)) {                                                \
      ++failures;                                                 \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
    }                                                             \
  } while (0)

static void groups(void) {
  cl_group* g = NULL;
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 5, 1, &g) == CL_OK);
  char buf[64];
  EXPECT(cl_group_order(g, buf, sizeof buf) == CL_OK && strcmp(buf, "120") == 0);
  EXPECT(cl_group_order(g, buf, 2) == CL_BUFFER_TOO_SMALL);
  EXPECT(cl_group_name(g, buf, sizeof buf) == CL_OK && strcmp(buf, "SL_2(F_5)") == 0);
  EXPECT(cl_bruhat_cell_sizes(g, buf, sizeof buf) == CL_OK && strcmp(buf, "20,100") == 0);

  cl_group_info info;
  EXPECT(cl_group_info_get(g, &info) == CL_OK);
  EXPECT(info.dim == 2 && info.q == 5 && info.enumerable == 1);

  const uint64_t a[4] = {1, 1, 0, 1}, b[4] = {1, 0, 1, 1};
  uint64_t c[4], inv[4], idx = 0, back[4];
  int member = 0;
  EXPECT(cl_group_mul(g, a, b, c) == CL_OK);
  EXPECT(c[0] == 2 && c[1] == 1 && c[2] == 1 && c[3] == 1);
  EXPECT(cl_group_inv(g, a, inv) == CL_OK && inv[1] == 4);
  EXPECT(cl_group_is_member(g, c, &member) == CL_OK && member == 1);
  const uint64_t bad[4] = {2, 0, 0, 2};
  EXPECT(cl_group_is_member(g, bad, &member) == CL_OK && member == 0);
  EXPECT(cl_group_index_of(g, bad, &idx) == CL_NOT_MEMBER);
  EXPECT(strlen(cl_last_error()) > 0);
  EXPECT(cl_group_index_of(g, c, &idx) == CL_OK && idx < 120);
  EXPECT(cl_group_element_at(g, idx, back) == CL_OK && memcmp(back, c, sizeof c) == 0);
  EXPECT(cl_group_element_at(g, 120, back) != CL_OK);

  uint64_t r1[4], r2[4];
  EXPECT(cl_group_random(g, 7, 3, r1) == CL_OK && cl_group_random(g, 7, 3, r2) == CL_OK);
  EXPECT(memcmp(r1, r2, sizeof r1) == 0);
  cl_group_destroy(g);

  cl_group* f4 = NULL;
  uint64_t mod[3];
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 2, 2, &f4) == CL_OK);
  EXPECT(cl_field_modulus(f4, mod, 3) == CL_OK && mod[0] == 1 && mod[1] == 1 && mod[2] == 1);
  cl_group_destroy(f4);

  cl_group* none = NULL;
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 4, 1, &none) == CL_NON_PRIME);
  EXPECT(none == NULL);
  EXPECT(strcmp(cl_status_name(CL_NON_PRIME), "NonPrime") == 0);
  EXPECT(cl_group_create(CL_FAMILY_SU3, 3, 2, 3, &none) == CL_UNSUPPORTED_FIELD_DEGREE);
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 5, 1, NULL) == CL_INVALID_ARGUMENT);
}

static void spectral_and_walk(void) {
  cl_group* c6 = NULL;
  EXPECT(cl_group_create(CL_FAMILY_CYCLIC, 0, 6, 0, &c6) == CL_OK);
  const uint64_t one = 1;
  cl_gens* s = NULL;
  EXPECT(cl_gens_from_entries(c6, 1, &one, &s) == CL_OK && cl_gens_count(s) == 1);
  cl_spectral_options opt;
  cl_spectral_defaults(&opt);
  cl_spectral_report rep;
  EXPECT(cl_spectral(c6, s, &opt, &rep) == CL_OK);
  EXPECT(fabs(rep.lambda_abs - 1.0) < 1e-6 && fabs(rep.lambda_signed_min + 1.0) < 1e-6);
  cl_bipartite_report bp;
  EXPECT(cl_bipartite(c6, s, &bp) == CL_OK && bp.bipartite == 1);

  cl_group* sl = NULL;
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 7, 1, &sl) == CL_OK);
  EXPECT(cl_spectral(sl, s, &opt, &rep) == CL_CONTEXT_MISMATCH);

  cl_gens* pair = NULL;
  EXPECT(cl_gens_random_pair(sl, 0, 0, &pair) == CL_OK && cl_gens_count(pair) == 2);
  uint64_t e[4];
  EXPECT(cl_gens_entries(pair, 1, e) == CL_OK);
  EXPECT(cl_gens_entries(pair, 2, e) != CL_OK);
  cl_phase_options po;
  cl_phase_defaults(&po);
  po.n_max = 500;
  cl_phase_row rows[8];
  cl_phase_summary sum;
  EXPECT(cl_phase_trace(sl, pair, &po, rows, 8, &sum) == CL_OK);
  EXPECT(sum.l2_monotone == 1 && sum.rows >= 8 && rows[0].n <= rows[1].n);

  char frac[64];
  double v = 0;
  EXPECT(cl_return_probability(4, frac, sizeof frac, &v) == CL_OK && strcmp(frac, "7/64") == 0);
  EXPECT(fabs(v - 7.0 / 64) < 1e-15);

  cl_gens_destroy(pair);
  cl_gens_destroy(s);
  cl_group_destroy(sl);
  cl_group_destroy(c6);
}

static void sz_and_sets(void) {
  cl_group* g = NULL;
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 5, 1, &g) == CL_OK);
  const uint64_t coeff = 1;
  const unsigned exps[4] = {1, 0, 0, 0};
  cl_poly* p = NULL;
  EXPECT(cl_poly_create(g, 4, 1, &coeff, exps, &p) == CL_OK && cl_poly_degree(p) == 1);
  cl_zero_count zc;
  EXPECT(cl_sz_group(p, g, 0, &zc) == CL_OK && zc.count == 20);
  EXPECT(cl_sz_group(p, g, 1, &zc) == CL_OK && zc.count == 20);
  EXPECT(cl_sz_affine(p, &zc) == CL_OK && zc.count == 125 && zc.bound_holds == 1);
  cl_poly_destroy(p);

  uint64_t id_index = 0;
  const uint64_t id[4] = {1, 0, 0, 1};
  EXPECT(cl_group_index_of(g, id, &id_index) == CL_OK);
  uint64_t energy = 0;
  EXPECT(cl_energy(g, &id_index, 1, &energy) == CL_OK && energy == 1);
  EXPECT(cl_energy(g, NULL, 0, &energy) == CL_EMPTY_SET);

  const uint64_t rot[4] = {0, 4, 1, 0};
  cl_gens* s = NULL;
  EXPECT(cl_gens_from_entries(g, 1, rot, &s) == CL_OK);
  uint64_t sub[8];
  size_t n = 0;
  EXPECT(cl_generated_subgroup(g, s, sub, 8, &n) == CL_OK && n == 4);
  double tri = 0;
  EXPECT(cl_tripling(g, sub, n, &tri) == CL_OK && tri == 1.0);
  uint64_t k = 0;
  int valid = 0;
  EXPECT(cl_approx_k(g, sub, n, &k, &valid) == CL_OK && k == 1 && valid == 1);
  EXPECT(cl_generated_subgroup(g, s, sub, 2, &n) == CL_BUFFER_TOO_SMALL);
  cl_gens_destroy(s);
  cl_group_destroy(g);
}

static void nonconc_and_pingpong(void) {
  cl_group* g = NULL;
  EXPECT(cl_group_create(CL_FAMILY_SL, 2, 5, 2, &g) == CL_OK);
  cl_gens* s = NULL;
  EXPECT(cl_gens_random_pair(g, 1, 0, &s) == CL_OK);
  cl_nonconc_options no;
  cl_nonconc_defaults(&no);
  no.samples = 2000;
  cl_trap_report reps[4];
  size_t count = 0;
  EXPECT(cl_nonconc_verdict(g, s, &no, reps, 4, &count) == CL_OK);
  EXPECT(count == 3);
  EXPECT(strcmp(reps[0].family, "subfield") == 0);
  EXPECT(cl_nonconc_verdict(g, s, &no, reps, 1, &count) == CL_BUFFER_TOO_SMALL);
  cl_gens_destroy(s);
  cl_group_destroy(g);

  cl_pingpong_options po;
  cl_pingpong_defaults(&po);
  po.max_len = 5;
  po.triples = 50;
  cl_pingpong_report pr;
  EXPECT(cl_pingpong_certify(&po, &pr) == CL_OK);
  EXPECT(pr.inclusions_ok == 1 && pr.all_nontrivial == 1 && pr.common_fixed_point_failures == 0);
  EXPECT(pr.words_checked == 4 * (1 + 3 + 9 + 27 + 81));
  po.L = "1";
  EXPECT(cl_pingpong_certify(&po, &pr) == CL_INVALID_ARGUMENT);
  po.L = "abc";
  EXPECT(cl_pingpong_certify(&po, &pr) == CL_INVALID_ARGUMENT);
}

int main(void) {
  EXPECT(strlen(cl_version()) > 0);
  cl_set_threads(2);
  EXPECT(cl_threads() == 2);
  groups();
  spectral_and_walk();
  sz_and_sets();
  nonconc_and_pingpong();
  printf("%d checks, %d failures\n", checks, failures);
  return failures != 0;
}
