#include "cayleylab.h"

#include <cstring>
#include <new>
#include <string>

#include "cayley/bruhat.hpp"
#include "cayley/combinat.hpp"
#include "cayley/error.hpp"
#include "cayley/nonconc.hpp"
#include "cayley/parallel.hpp"
#include "cayley/pingpong.hpp"
#include "cayley/spectral.hpp"
#include "cayley/sz.hpp"
#include "cayley/walk.hpp"
#include "cayley/words.hpp"

#ifndef CAYLEYLAB_VERSION
#define CAYLEYLAB_VERSION "unknown"
#endif

using namespace cayley;

struct cl_group {
  GroupPtr ctx;
};

struct cl_gens {
  GroupPtr ctx;
  std::vector<GroupElem> elems;
};

struct cl_poly {
  FieldPtr field;
  sz::Poly poly;
};

namespace {

thread_local std::string last_error;

template <class F>
cl_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return CL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<cl_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CL_TOO_LARGE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(Errc::invalid_argument, std::string(what) + " is null");
}

void same_group(const cl_group* g, const cl_gens* s) {
  need(g, "group");
  need(s, "generator set");
  if (g->ctx != s->ctx) fail(Errc::context_mismatch, "generators belong to a different group");
}

std::size_t elem_len(const GroupCtx& ctx) { return std::size_t{ctx.dim()} * ctx.dim(); }

GroupElem read_elem(const GroupCtx& ctx, const uint64_t* a) {
  need(a, "element");
  return ctx.from_entries(std::span<const std::uint64_t>(a, elem_len(ctx)));
}

void write_elem(const GroupCtx& ctx, const GroupElem& g, uint64_t* out) {
  need(out, "output");
  for (std::size_t i = 0; i < elem_len(ctx); ++i) out[i] = g.e[i].v;
}

void write_string(const std::string& s, char* buf, size_t len) {
  need(buf, "buffer");
  if (s.size() + 1 > len) fail(Errc::buffer_too_small, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

template <size_t N>
void copy_fixed(char (&dst)[N], const std::string& s) {
  std::strncpy(dst, s.c_str(), N - 1);
  dst[N - 1] = '\0';
}

combinat::ElemSet read_set(const GroupCtx& ctx, const uint64_t* set, size_t n) {
  if (n > 0) need(set, "set");
  std::vector<std::uint64_t> v(set, set + n);
  if (ctx.enumerable()) {
    for (auto i : v) {
      if (i >= ctx.order_u64()) fail(Errc::invalid_argument, "index outside the group");
    }
  }
  return combinat::make_set(std::move(v));
}

int opt_int(const std::optional<unsigned>& v) { return v ? static_cast<int>(*v) : -1; }

}  // namespace

extern "C" {

const char* cl_version(void) { return CAYLEYLAB_VERSION; }

const char* cl_status_name(cl_status s) { return errc_name(static_cast<Errc>(s)); }

const char* cl_last_error(void) { return last_error.c_str(); }

void cl_set_threads(unsigned n) { set_thread_count(n); }

unsigned cl_threads(void) { return thread_count(); }

cl_status cl_group_create(cl_family family, unsigned m, uint64_t p, unsigned k, cl_group** out) {
  return guard([&] {
    need(out, "output");
    *out = nullptr;
    GroupPtr ctx;
    switch (family) {
      case CL_FAMILY_SL: ctx = GroupCtx::sl(m, FieldCtx::make(p, k)); break;
      case CL_FAMILY_SP4: ctx = GroupCtx::sp4(FieldCtx::make(p, k)); break;
      case CL_FAMILY_SU3: ctx = GroupCtx::su3(FieldCtx::make(p, k)); break;
      case CL_FAMILY_CYCLIC: ctx = GroupCtx::cyclic(p); break;
      default: fail(Errc::unsupported_family, "unknown family");
    }
    *out = new cl_group{std::move(ctx)};
  });
}

void cl_group_destroy(cl_group* g) { delete g; }

cl_status cl_group_info_get(const cl_group* g, cl_group_info* out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    const GroupCtx& c = *g->ctx;
    out->family = static_cast<cl_family>(c.family());
    out->dim = c.dim();
    const bool cyc = c.family() == Family::Cyclic;
    out->p = cyc ? c.cyclic_n() : c.field().p();
    out->k = cyc ? 0 : c.field().k();
    out->q = cyc ? 0 : c.field().q();
    out->twist = c.twist_order();
    out->enumerable = c.enumerable() ? 1 : 0;
  });
}

cl_status cl_group_order(const cl_group* g, char* buf, size_t len) {
  return guard([&] {
    need(g, "group");
    write_string(g->ctx->order().get_str(), buf, len);
  });
}

cl_status cl_group_name(const cl_group* g, char* buf, size_t len) {
  return guard([&] {
    need(g, "group");
    write_string(g->ctx->name(), buf, len);
  });
}

cl_status cl_field_modulus(const cl_group* g, uint64_t* coeffs, size_t len) {
  return guard([&] {
    need(g, "group");
    need(coeffs, "output");
    if (g->ctx->family() == Family::Cyclic) fail(Errc::unsupported_family, "the cyclic family has no field");
    const auto mod = g->ctx->field().modulus();
    if (len < mod.size()) fail(Errc::buffer_too_small, "modulus needs k + 1 entries");
    std::copy(mod.begin(), mod.end(), coeffs);
  });
}

cl_status cl_group_mul(const cl_group* g, const uint64_t* a, const uint64_t* b, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    const GroupCtx& c = *g->ctx;
    write_elem(c, c.mul(read_elem(c, a), read_elem(c, b)), out);
  });
}

cl_status cl_group_inv(const cl_group* g, const uint64_t* a, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    const GroupCtx& c = *g->ctx;
    write_elem(c, c.inv(read_elem(c, a)), out);
  });
}

cl_status cl_group_is_member(const cl_group* g, const uint64_t* a, int* out) {
  return guard([&] {
    need(g, "group");
    need(a, "element");
    need(out, "output");
    GroupElem x;
    for (std::size_t i = 0; i < elem_len(*g->ctx); ++i) x.e[i].v = a[i];
    *out = g->ctx->is_member(x) ? 1 : 0;
  });
}

cl_status cl_group_index_of(const cl_group* g, const uint64_t* a, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = g->ctx->index_of(read_elem(*g->ctx, a));
  });
}

cl_status cl_group_element_at(const cl_group* g, uint64_t index, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    if (g->ctx->order() <= index) fail(Errc::invalid_argument, "index outside the group");
    write_elem(*g->ctx, g->ctx->element_at(index), out);
  });
}

cl_status cl_group_random(const cl_group* g, uint64_t seed, uint64_t stream_id, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    Rng rng = stream(seed, stream_id);
    write_elem(*g->ctx, g->ctx->random(rng), out);
  });
}

cl_status cl_bruhat_cell_sizes(const cl_group* g, char* buf, size_t len) {
  return guard([&] {
    need(g, "group");
    const GroupCtx& c = *g->ctx;
    std::string s;
    if (c.family() == Family::SL) {
      for (const auto& w : bruhat::weyl_elements(c.dim())) {
        if (!s.empty()) s += ',';
        s += bruhat::cell_size(c, w).get_str();
      }
    } else if (c.family() == Family::SU3) {
      const mpz_class big = bruhat::su3_big_cell_size(c.su3().qt);
      s = mpz_class(c.order() - big).get_str() + "," + big.get_str();
    } else {
      fail(Errc::unsupported_family, "Bruhat cells are available for SL_m and SU_3");
    }
    write_string(s, buf, len);
  });
}

cl_status cl_gens_from_entries(const cl_group* g, size_t count, const uint64_t* entries, cl_gens** out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = nullptr;
    if (count == 0) fail(Errc::empty_generators, "no generators");
    auto s = std::make_unique<cl_gens>();
    s->ctx = g->ctx;
    for (size_t i = 0; i < count; ++i) s->elems.push_back(read_elem(*g->ctx, entries + i * elem_len(*g->ctx)));
    *out = s.release();
  });
}

cl_status cl_gens_random_pair(const cl_group* g, uint64_t seed, uint64_t index, cl_gens** out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = nullptr;
    Rng rng = stream(seed, index);
    auto s = std::make_unique<cl_gens>();
    s->ctx = g->ctx;
    s->elems.push_back(g->ctx->random(rng));
    s->elems.push_back(g->ctx->random(rng));
    *out = s.release();
  });
}

void cl_gens_destroy(cl_gens* s) { delete s; }

size_t cl_gens_count(const cl_gens* s) { return s ? s->elems.size() : 0; }

cl_status cl_gens_entries(const cl_gens* s, size_t i, uint64_t* out) {
  return guard([&] {
    need(s, "generator set");
    if (i >= s->elems.size()) fail(Errc::invalid_argument, "generator index out of range");
    write_elem(*s->ctx, s->elems[i], out);
  });
}

void cl_spectral_defaults(cl_spectral_options* opt) {
  if (!opt) return;
  const spectral::SpectralOptions d;
  opt->power_method = 0;
  opt->tol = d.tol;
  opt->max_iter = d.max_iter;
  opt->restarts = d.restarts;
  opt->seed = d.seed;
}

cl_status cl_spectral(const cl_group* g, const cl_gens* s, const cl_spectral_options* opt, cl_spectral_report* out) {
  return guard([&] {
    same_group(g, s);
    need(out, "output");
    spectral::SpectralOptions o;
    if (opt) {
      o.method = opt->power_method ? spectral::Method::Power : spectral::Method::Lanczos;
      o.tol = opt->tol;
      o.max_iter = opt->max_iter;
      o.restarts = opt->restarts;
      o.seed = opt->seed;
    }
    const auto r = spectral::spectral_norm_meanzero(g->ctx, s->elems, o);
    out->lambda_abs = r.lambda_abs;
    out->lambda_signed_max = r.lambda_signed_max;
    out->lambda_signed_min = r.lambda_signed_min;
    out->epsilon = r.epsilon;
    out->iterations = r.iterations;
    out->residual = r.residual;
    out->converged = r.converged ? 1 : 0;
  });
}

cl_status cl_bipartite(const cl_group* g, const cl_gens* s, cl_bipartite_report* out) {
  return guard([&] {
    same_group(g, s);
    need(out, "output");
    const auto r = spectral::bipartite_detect(g->ctx, s->elems);
    out->bipartite = r.bipartite ? 1 : 0;
    out->perfect_shortcut = r.method == "perfect-group" ? 1 : 0;
    out->component_size = r.component_size;
  });
}

void cl_phase_defaults(cl_phase_options* opt) {
  if (!opt) return;
  const walk::PhaseOptions d;
  opt->kappa = d.kappa;
  opt->n_max = d.n_max;
  opt->stop_when_done = d.stop_when_done;
  opt->stop_at_surrogate = d.stop_at_surrogate;
}

cl_status cl_phase_trace(const cl_group* g, const cl_gens* s, const cl_phase_options* opt, cl_phase_row* rows,
                         size_t cap, cl_phase_summary* out) {
  return guard([&] {
    same_group(g, s);
    need(out, "output");
    if (cap > 0) need(rows, "rows");
    walk::PhaseOptions o;
    if (opt) {
      o.kappa = opt->kappa;
      o.n_max = opt->n_max;
      o.stop_when_done = opt->stop_when_done != 0;
      o.stop_at_surrogate = opt->stop_at_surrogate != 0;
    }
    const auto r = walk::phase_trace(g->ctx, s->elems, o);
    out->threshold1 = r.threshold1;
    out->threshold2 = r.threshold2;
    out->threshold3 = r.threshold3;
    out->threshold3_raw = r.threshold3_raw;
    out->surrogate_inv = r.surrogate_inv;
    out->surrogate_abs = r.surrogate_abs;
    out->n1 = opt_int(r.n1);
    out->n2 = opt_int(r.n2);
    out->n3 = opt_int(r.n3);
    out->n3_inv = opt_int(r.n3_inv);
    out->n3_abs = opt_int(r.n3_abs);
    out->l2_monotone = r.l2_monotone ? 1 : 0;
    out->rows = r.trajectory.size();
    for (size_t i = 0; i < std::min(cap, r.trajectory.size()); ++i) {
      const auto& t = r.trajectory[i];
      rows[i] = {t.n, t.l2, t.linf_dist, t.support};
    }
  });
}

cl_status cl_return_probability(unsigned n, char* buf, size_t len, double* value) {
  return guard([&] {
    const mpq_class p = words::return_probability(n);
    if (buf) write_string(p.get_str(), buf, len);
    if (value) *value = p.get_d();
  });
}

void cl_nonconc_defaults(cl_nonconc_options* opt) {
  if (!opt) return;
  const nonconc::VerdictOptions d;
  opt->gamma = d.gamma;
  opt->c0 = d.c0;
  opt->samples = d.samples;
  opt->xn_degree = d.xn_degree;
  opt->seed = d.seed;
}

cl_status cl_nonconc_verdict(const cl_group* g, const cl_gens* s, const cl_nonconc_options* opt, cl_trap_report* out,
                             size_t cap, size_t* count) {
  return guard([&] {
    same_group(g, s);
    need(count, "count");
    if (s->elems.size() != 2) fail(Errc::invalid_argument, "non-concentration needs exactly two generators");
    nonconc::VerdictOptions o;
    if (opt) {
      o.gamma = opt->gamma;
      o.c0 = opt->c0;
      o.samples = opt->samples;
      o.xn_degree = opt->xn_degree;
      o.seed = opt->seed;
    }
    const auto reps = nonconc::nonconc_verdict(*g->ctx, s->elems[0], s->elems[1], o);
    *count = reps.size();
    if (reps.size() > cap) fail(Errc::buffer_too_small, "report buffer too small");
    need(out, "output");
    for (size_t i = 0; i < reps.size(); ++i) {
      const auto& r = reps[i];
      cl_trap_report& t = out[i];
      copy_fixed(t.family, nonconc::family_name(r.family));
      t.subfield_index = r.subfield_index;
      t.n = r.n;
      t.samples = r.samples;
      t.trapped = r.trapped;
      t.trapped_fraction = r.trapped_fraction;
      t.std_error = r.std_error;
      t.subfield_fraction = r.subfield_fraction;
      t.degenerate_fraction = r.degenerate_fraction;
      t.discarded = r.discarded;
      t.threshold = r.threshold;
      t.pass = r.pass ? 1 : 0;
    }
  });
}

cl_status cl_poly_create(const cl_group* g, unsigned nvars, size_t nterms, const uint64_t* coeffs,
                         const unsigned* exps, cl_poly** out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = nullptr;
    if (g->ctx->family() == Family::Cyclic) fail(Errc::unsupported_family, "polynomials need a field");
    if (nterms > 0) {
      need(coeffs, "coefficients");
      need(exps, "exponents");
    }
    std::vector<sz::Term> terms;
    for (size_t t = 0; t < nterms; ++t) {
      terms.push_back({FieldElem{coeffs[t]}, std::vector<unsigned>(exps + t * nvars, exps + (t + 1) * nvars)});
    }
    const FieldPtr& f = g->ctx->field_ptr();
    *out = new cl_poly{f, sz::Poly(*f, nvars, std::move(terms))};
  });
}

void cl_poly_destroy(cl_poly* p) { delete p; }

unsigned cl_poly_degree(const cl_poly* p) { return p ? p->poly.degree() : 0; }

namespace {

void same_field(const cl_poly* p, const cl_group* g) {
  need(p, "polynomial");
  need(g, "group");
  if (g->ctx->family() == Family::Cyclic) fail(Errc::unsupported_family, "polynomials need a field");
  const FieldCtx& a = *p->field;
  const FieldCtx& b = g->ctx->field();
  if (a.p() != b.p() || a.k() != b.k()) fail(Errc::context_mismatch, "polynomial is over a different field");
}

}  // namespace

cl_status cl_sz_affine(const cl_poly* p, cl_zero_count* out) {
  return guard([&] {
    need(p, "polynomial");
    need(out, "output");
    const auto r = sz::zero_count_affine(p->poly, *p->field);
    *out = {};
    out->count = r.count;
    out->points = r.points;
    out->bound = r.bound.get_d();
    out->ratio = r.bound > 0 ? static_cast<double>(r.count) / out->bound : 0.0;
    out->identically_zero = r.identically_zero;
    out->bound_holds = r.bound_holds;
    out->fubini_holds = 1;
  });
}

cl_status cl_sz_group(const cl_poly* p, const cl_group* g, int streaming, cl_zero_count* out) {
  return guard([&] {
    same_field(p, g);
    need(out, "output");
    const auto r = streaming ? sz::zero_count_group_bruhat(p->poly, *g->ctx) : sz::zero_count_group(p->poly, *g->ctx);
    *out = {};
    out->count = r.count;
    out->points = r.order;
    out->bound = r.scale;
    out->ratio = r.ratio;
    out->identically_zero = r.identically_zero;
    out->bound_holds = 1;
    out->fubini_holds = 1;
  });
}

cl_status cl_sz_pairs(const cl_poly* p, const cl_group* g, cl_zero_count* out) {
  return guard([&] {
    same_field(p, g);
    need(out, "output");
    const auto r = sz::zero_count_pairs(p->poly, *g->ctx);
    *out = {};
    out->count = r.count;
    out->points = r.order * r.order;
    out->bound = r.scale;
    out->ratio = r.ratio;
    out->identically_zero = r.identically_zero;
    out->bound_holds = 1;
    out->fubini_holds = r.fubini_holds;
  });
}

cl_status cl_energy(const cl_group* g, const uint64_t* set, size_t n, uint64_t* out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = combinat::multiplicative_energy(*g->ctx, read_set(*g->ctx, set, n));
  });
}

cl_status cl_product_size(const cl_group* g, const uint64_t* a, size_t na, const uint64_t* b, size_t nb,
                          uint64_t* out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = combinat::product_set(*g->ctx, read_set(*g->ctx, a, na), read_set(*g->ctx, b, nb)).size();
  });
}

cl_status cl_tripling(const cl_group* g, const uint64_t* set, size_t n, double* out) {
  return guard([&] {
    need(g, "group");
    need(out, "output");
    *out = combinat::tripling(*g->ctx, read_set(*g->ctx, set, n));
  });
}

cl_status cl_approx_k(const cl_group* g, const uint64_t* set, size_t n, uint64_t* k, int* valid) {
  return guard([&] {
    need(g, "group");
    need(k, "output");
    const auto c = combinat::approx_k(*g->ctx, read_set(*g->ctx, set, n));
    *k = c.k;
    if (valid) *valid = c.valid ? 1 : 0;
  });
}

cl_status cl_generated_subgroup(const cl_group* g, const cl_gens* s, uint64_t* out, size_t cap, size_t* count) {
  return guard([&] {
    same_group(g, s);
    need(count, "count");
    const auto h = combinat::generated_subgroup(*g->ctx, s->elems);
    *count = h.size();
    if (h.size() > cap) fail(Errc::buffer_too_small, "subgroup buffer too small");
    need(out, "output");
    std::copy(h.begin(), h.end(), out);
  });
}

void cl_pingpong_defaults(cl_pingpong_options* opt) {
  if (!opt) return;
  opt->L = nullptr;
  opt->max_len = 8;
  opt->word_len = 6;
  opt->triples = 1000;
  opt->seed = 0;
}

cl_status cl_pingpong_certify(const cl_pingpong_options* opt, cl_pingpong_report* out) {
  return guard([&] {
    need(opt, "options");
    need(out, "output");
    pingpong::Pair pair;
    if (opt->L) {
      mpq_class L;
      if (L.set_str(opt->L, 10) != 0) fail(Errc::invalid_argument, std::string("cannot parse L = ") + opt->L);
      L.canonicalize();
      pair = pingpong::build_pair(L, pingpong::pinned_h());
    } else {
      pair = pingpong::pinned_pair();
    }
    *out = {};
    const auto inc = pingpong::verify_inclusions(pair, pingpong::default_samples(pair));
    out->inclusions_ok = inc.ok;
    out->inclusion_checks = inc.checks;
    const auto fr = pingpong::freeness_certificate(pair, opt->max_len);
    out->max_len = fr.max_len;
    out->words_checked = fr.words_checked;
    out->all_nontrivial = fr.all_nontrivial;
    out->region_misses = fr.region_misses;
    copy_fixed(out->counterexample, fr.counterexample.value_or(""));
    if (opt->triples > 0) {
      const auto lc = pingpong::locally_commutative_check(pair, opt->word_len, opt->triples, opt->seed);
      out->triples_checked = lc.triples_checked;
      out->triples_rejected = lc.triples_rejected;
      out->common_fixed_point_failures = lc.common_fixed_point_failures;
      out->containment_checked = lc.containment_checked;
      out->containment_failures = lc.containment_failures;
    }
  });
}

}  // extern "C"
