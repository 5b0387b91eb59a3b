#include "cayley/sz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "cayley/bruhat.hpp"
#include "cayley/error.hpp"
#include "cayley/parallel.hpp"

namespace cayley::sz {

Poly::Poly(const FieldCtx& f, unsigned nvars, std::vector<Term> terms) : nvars_(nvars) {
  for (const auto& t : terms) {
    if (t.exps.size() != nvars) fail(Errc::dimension_mismatch, "exponent vector length differs from variable count");
    if (!f.valid(t.coeff)) fail(Errc::invalid_argument, "coefficient outside the field");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().exps == t.exps) {
      terms_.back().coeff = f.add(terms_.back().coeff, t.coeff);
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff.v == 0; });
  for (const auto& t : terms_) {
    degree_ = std::max(degree_, std::accumulate(t.exps.begin(), t.exps.end(), 0u));
  }
}

Poly Poly::constant(const FieldCtx& f, unsigned nvars, FieldElem c) {
  return Poly(f, nvars, {Term{c, std::vector<unsigned>(nvars, 0)}});
}

Poly Poly::variable(const FieldCtx& f, unsigned nvars, unsigned i) {
  if (i >= nvars) fail(Errc::dimension_mismatch, "variable index out of range");
  std::vector<unsigned> e(nvars, 0);
  e[i] = 1;
  return Poly(f, nvars, {Term{f.one(), std::move(e)}});
}

FieldElem Poly::eval(const FieldCtx& f, std::span<const FieldElem> x) const {
  if (x.size() != nvars_) fail(Errc::dimension_mismatch, "point has the wrong number of coordinates");
  FieldElem s = f.zero();
  for (const auto& t : terms_) {
    FieldElem m = t.coeff;
    for (unsigned i = 0; i < nvars_ && m.v != 0; ++i) {
      for (unsigned e = 0; e < t.exps[i]; ++e) m = f.mul(m, x[i]);
    }
    s = f.add(s, m);
  }
  return s;
}

namespace {

void same_ring(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) fail(Errc::dimension_mismatch, "polynomials in different variable counts");
}

}  // namespace

Poly add(const FieldCtx& f, const Poly& a, const Poly& b) {
  same_ring(a, b);
  std::vector<Term> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return Poly(f, a.nvars(), std::move(t));
}

Poly scale(const FieldCtx& f, const Poly& a, FieldElem c) {
  std::vector<Term> t = a.terms();
  for (auto& x : t) x.coeff = f.mul(x.coeff, c);
  return Poly(f, a.nvars(), std::move(t));
}

Poly sub(const FieldCtx& f, const Poly& a, const Poly& b) { return add(f, a, scale(f, b, f.neg(f.one()))); }

Poly mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  same_ring(a, b);
  std::vector<Term> t;
  t.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      Term z{f.mul(x.coeff, y.coeff), x.exps};
      for (unsigned i = 0; i < a.nvars(); ++i) z.exps[i] += y.exps[i];
      t.push_back(std::move(z));
    }
  }
  return Poly(f, a.nvars(), std::move(t));
}

Poly entry(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which, unsigned i, unsigned j) {
  return Poly::variable(f, nvars, which * m * m + i * m + j);
}

Poly product_entry(const FieldCtx& f, unsigned nvars, unsigned m, unsigned left, unsigned right, unsigned i,
                   unsigned j) {
  Poly s(f, nvars, {});
  for (unsigned k = 0; k < m; ++k) {
    s = add(f, s, mul(f, entry(f, nvars, m, left, i, k), entry(f, nvars, m, right, k, j)));
  }
  return s;
}

Poly det_poly(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which) {
  std::vector<unsigned> perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  Poly s(f, nvars, {});
  do {
    unsigned inv = 0;
    for (unsigned i = 0; i < m; ++i) {
      for (unsigned j = i + 1; j < m; ++j) inv += perm[i] > perm[j];
    }
    Poly t = Poly::constant(f, nvars, inv % 2 ? f.neg(f.one()) : f.one());
    for (unsigned i = 0; i < m; ++i) t = mul(f, t, entry(f, nvars, m, which, i, perm[i]));
    s = add(f, s, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

Poly trace_poly(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which) {
  Poly s(f, nvars, {});
  for (unsigned i = 0; i < m; ++i) s = add(f, s, entry(f, nvars, m, which, i, i));
  return s;
}

Poly random_poly(const FieldCtx& f, unsigned nvars, unsigned max_degree, unsigned nterms, Rng& rng) {
  if (nvars == 0) fail(Errc::invalid_argument, "need at least one variable");
  auto random_exps = [&](unsigned deg) {
    // Distribute deg among the variables one unit at a time.
    std::vector<unsigned> e(nvars, 0);
    for (unsigned u = 0; u < deg; ++u) ++e[uniform_below(rng, nvars)];
    return e;
  };
  auto nonzero = [&] { return FieldElem{1 + uniform_below(rng, f.q() - 1)}; };
  std::vector<Term> t;
  t.push_back({nonzero(), random_exps(max_degree)});
  for (unsigned i = 1; i < nterms; ++i) {
    t.push_back({nonzero(), random_exps(static_cast<unsigned>(uniform_below(rng, max_degree + 1)))});
  }
  // Merging can cancel the top-degree term; retry rather than under-report D.
  Poly p(f, nvars, std::move(t));
  return p.degree() == max_degree ? p : random_poly(f, nvars, max_degree, nterms, rng);
}

AffineCount zero_count_affine(const Poly& p, const FieldCtx& f) {
  const unsigned d = p.nvars();
  const double points = std::pow(static_cast<double>(f.q()), d);
  if (points > kMaxAffinePoints) fail(Errc::too_large, "q^d exceeds 1e8");
  const std::uint64_t n = static_cast<std::uint64_t>(points + 0.5);
  const std::uint64_t q = f.q();
  std::atomic<std::uint64_t> total{0};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<FieldElem> x(d);
    std::uint64_t r = begin;
    for (unsigned i = 0; i < d; ++i, r /= q) x[i] = {r % q};
    std::uint64_t c = 0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      c += p.eval(f, x).v == 0;
      for (unsigned i = 0; i < d; ++i) {
        if (++x[i].v < q) break;
        x[i].v = 0;
      }
    }
    total += c;
  });
  AffineCount r;
  r.count = total;
  r.points = n;
  mpz_class qd1;
  mpz_ui_pow_ui(qd1.get_mpz_t(), q, d == 0 ? 0 : d - 1);
  r.bound = qd1 * d * p.degree();
  r.identically_zero = r.count == n;
  r.bound_holds = r.identically_zero || mpz_class(r.count) <= r.bound;
  return r;
}

namespace {

void check_group(const Poly& p, const GroupCtx& ctx, unsigned blocks) {
  if (ctx.family() == Family::Cyclic) fail(Errc::unsupported_family, "polynomial counts need a matrix group");
  const unsigned m = ctx.dim();
  if (p.nvars() != blocks * m * m) fail(Errc::dimension_mismatch, "polynomial variable count does not match the group");
}

double scale_of(unsigned degree, const GroupCtx& ctx, double size) {
  return degree * std::pow(static_cast<double>(ctx.field().q()), -1.0 / ctx.twist_order()) * size;
}

GroupCount finish(const Poly& p, const GroupCtx& ctx, std::uint64_t count, std::uint64_t order) {
  GroupCount r;
  r.count = count;
  r.order = order;
  r.degree = p.degree();
  r.twist = ctx.twist_order();
  r.scale = scale_of(r.degree, ctx, static_cast<double>(order));
  r.ratio = r.scale > 0 ? static_cast<double>(count) / r.scale : 0.0;
  r.identically_zero = count == order;
  return r;
}

std::vector<FieldElem> coords(const GroupElem& g, unsigned mm) { return {g.e.begin(), g.e.begin() + mm}; }

}  // namespace

GroupCount zero_count_group(const Poly& p, const GroupCtx& ctx) {
  check_group(p, ctx, 1);
  if (ctx.order() > kMaxGroupPoints) fail(Errc::too_large, "group order exceeds 1e7");
  const std::uint64_t n = ctx.order_u64();
  const unsigned mm = ctx.dim() * ctx.dim();
  const FieldCtx& f = ctx.field();
  std::atomic<std::uint64_t> total{0};
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::uint64_t c = 0;
    for (std::size_t i = begin; i < end; ++i) c += p.eval(f, coords(ctx.element_at(i), mm)).v == 0;
    total += c;
  });
  return finish(p, ctx, total, n);
}

GroupCount zero_count_group_bruhat(const Poly& p, const GroupCtx& ctx) {
  check_group(p, ctx, 1);
  if (ctx.order() > kMaxGroupPoints) fail(Errc::too_large, "group order exceeds 1e7");
  const unsigned mm = ctx.dim() * ctx.dim();
  const FieldCtx& f = ctx.field();
  std::uint64_t count = 0, seen = 0;
  auto visit = [&](const GroupElem& g) {
    ++seen;
    count += p.eval(f, coords(g, mm)).v == 0;
  };
  if (ctx.family() == Family::SL) {
    for (const auto& w : bruhat::weyl_elements(ctx.dim())) bruhat::for_each_in_cell(ctx, w, visit);
  } else if (ctx.family() == Family::SU3) {
    bruhat::su3_for_each(ctx, visit);
  } else {
    fail(Errc::unsupported_family, "cell streaming is available for SL_m and SU_3");
  }
  if (seen != ctx.order_u64()) fail(Errc::internal, "cell streaming did not cover the group");
  return finish(p, ctx, count, seen);
}

PairCount zero_count_pairs(const Poly& p, const GroupCtx& ctx) {
  check_group(p, ctx, 2);
  const double order = ctx.order().get_d();
  if (order * order > kMaxPairPoints) fail(Errc::too_large, "|G|^2 exceeds 1e8");
  const std::uint64_t n = ctx.order_u64();
  const unsigned mm = ctx.dim() * ctx.dim();
  const FieldCtx& f = ctx.field();
  std::vector<GroupElem> elems(n);
  for (std::uint64_t i = 0; i < n; ++i) elems[i] = ctx.element_at(i);
  std::vector<std::uint64_t> slice(n, 0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<FieldElem> x(2 * mm);
    for (std::size_t b = begin; b < end; ++b) {
      std::copy_n(elems[b].e.begin(), mm, x.begin() + mm);
      std::uint64_t c = 0;
      for (const auto& a : elems) {
        std::copy_n(a.e.begin(), mm, x.begin());
        c += p.eval(f, x).v == 0;
      }
      slice[b] = c;
    }
  });
  PairCount r;
  r.order = n;
  r.degree = p.degree();
  r.twist = ctx.twist_order();
  for (auto c : slice) {
    r.count += c;
    if (c == n) {
      ++r.dead_slices;
    } else {
      r.max_live_slice = std::max(r.max_live_slice, c);
    }
  }
  r.scale = scale_of(r.degree, ctx, order * order);
  r.ratio = r.scale > 0 ? static_cast<double>(r.count) / r.scale : 0.0;
  r.identically_zero = r.count == n * n;
  r.fubini_bound = r.dead_slices * n + n * r.max_live_slice;
  r.fubini_holds = r.count <= r.fubini_bound;
  return r;
}

}  // namespace cayley::sz
