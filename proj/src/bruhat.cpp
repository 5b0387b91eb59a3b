#include "cayley/bruhat.hpp"

#include <algorithm>
#include <numeric>

#include "cayley/error.hpp"

namespace cayley::bruhat {

namespace {

void require_sl(const GroupCtx& ctx) {
  if (ctx.family() != Family::SL) fail(Errc::unsupported, "Bruhat coordinates are implemented for SL_m only");
}

void require_su3(const GroupCtx& ctx) {
  if (ctx.family() != Family::SU3) fail(Errc::unsupported, "expected an SU_3 context");
}

void check_perm(const Perm& perm, unsigned m) {
  if (perm.size() != m) fail(Errc::dimension_mismatch, "permutation has the wrong length");
  std::vector<bool> seen(m, false);
  for (unsigned v : perm) {
    if (v >= m || seen[v]) fail(Errc::invalid_argument, "not a permutation");
    seen[v] = true;
  }
}

std::vector<std::pair<unsigned, unsigned>> u2_positions(const Perm& perm) {
  std::vector<std::pair<unsigned, unsigned>> out;
  const unsigned m = static_cast<unsigned>(perm.size());
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) {
      if (perm[i] > perm[j]) out.emplace_back(i, j);
    }
  }
  return out;
}

GroupElem torus(const GroupCtx& ctx, const std::vector<FieldElem>& t) {
  const FieldCtx& F = ctx.field();
  const unsigned m = ctx.dim();
  GroupElem h;
  FieldElem prod = F.one();
  for (unsigned i = 0; i + 1 < m; ++i) {
    if (t[i].v == 0) fail(Errc::zero_torus_param, "torus parameter must be nonzero");
    h.at(m, i, i) = t[i];
    prod = F.mul(prod, t[i]);
  }
  h.at(m, m - 1, m - 1) = F.inv(prod);
  return h;
}

// Uniform integer in [0, n) from 64-bit draws, by bit-length rejection.
mpz_class uniform_mpz(Rng& rng, const mpz_class& n) {
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (;;) {
    mpz_class x = 0;
    std::size_t have = 0;
    while (have < bits) {
      x <<= 64;
      const std::uint64_t w = rng();
      x += mpz_class(static_cast<unsigned long>(w >> 32)) << 32;
      x += static_cast<unsigned long>(w & 0xffffffffULL);
      have += 64;
    }
    x >>= static_cast<mp_bitcnt_t>(have - bits);
    if (x < n) return x;
  }
}

FieldElem random_elem(const FieldCtx& F, Rng& rng) { return {uniform_below(rng, F.q())}; }
FieldElem random_unit(const FieldCtx& F, Rng& rng) { return {1 + uniform_below(rng, F.q() - 1)}; }

}  // namespace

std::vector<Perm> weyl_elements(unsigned m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm longest_element(unsigned m) {
  Perm p(m);
  for (unsigned i = 0; i < m; ++i) p[i] = m - 1 - i;
  return p;
}

unsigned inversions(const Perm& perm) { return static_cast<unsigned>(u2_positions(perm).size()); }

GroupElem weyl_rep(const GroupCtx& ctx, const Perm& perm) {
  require_sl(ctx);
  const unsigned m = ctx.dim();
  check_perm(perm, m);
  const FieldCtx& F = ctx.field();
  // pi = s_{i1} s_{i2} ... with each step peeling the smallest left descent.
  Perm pi = perm;
  std::vector<unsigned> word;
  for (;;) {
    Perm pos(m);
    for (unsigned j = 0; j < m; ++j) pos[pi[j]] = j;
    unsigned i = 0;
    while (i + 1 < m && pos[i + 1] > pos[i]) ++i;
    if (i + 1 >= m) break;
    word.push_back(i);
    for (auto& v : pi) {
      if (v == i) v = i + 1;
      else if (v == i + 1) v = i;
    }
  }
  GroupElem n = ctx.identity();
  for (unsigned i : word) {
    GroupElem s = ctx.identity();
    s.at(m, i, i) = F.zero();
    s.at(m, i + 1, i + 1) = F.zero();
    s.at(m, i, i + 1) = F.neg(F.one());
    s.at(m, i + 1, i) = F.one();
    n = ctx.mat_mul(n, s);
  }
  return n;
}

GroupElem compose(const GroupCtx& ctx, const BruhatCoords& c) {
  require_sl(ctx);
  const unsigned m = ctx.dim();
  check_perm(c.perm, m);
  const auto pos2 = u2_positions(c.perm);
  if (c.u1.size() != m * (m - 1) / 2 || c.t.size() != m - 1 || c.u2.size() != pos2.size()) {
    fail(Errc::dimension_mismatch, "Bruhat coordinate vector has the wrong length");
  }
  GroupElem u1 = ctx.identity();
  std::size_t k = 0;
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) u1.at(m, i, j) = c.u1[k++];
  }
  GroupElem u2 = ctx.identity();
  for (std::size_t r = 0; r < pos2.size(); ++r) u2.at(m, pos2[r].first, pos2[r].second) = c.u2[r];
  const GroupElem h = torus(ctx, c.t);
  return ctx.mat_mul(ctx.mat_mul(u1, h), ctx.mat_mul(weyl_rep(ctx, c.perm), u2));
}

BruhatCoords decompose(const GroupCtx& ctx, const GroupElem& g) {
  require_sl(ctx);
  const FieldCtx& F = ctx.field();
  const unsigned m = ctx.dim();
  // Row r of g is a combination of rows s >= r of n_w u2. Eliminating the
  // pivot columns of lower rows (highest first) leaves a multiple of a row of
  // u2 whose leading column c_r satisfies pi(c_r) = r.
  GroupElem red = g;
  std::vector<unsigned> lead(m);
  for (unsigned r = m; r-- > 0;) {
    for (unsigned s = m - 1; s > r; --s) {
      const unsigned cs = lead[s];
      const FieldElem f = F.div(red.at(m, r, cs), red.at(m, s, cs));
      if (f.v == 0) continue;
      for (unsigned j = 0; j < m; ++j) red.at(m, r, j) = F.sub(red.at(m, r, j), F.mul(f, red.at(m, s, j)));
    }
    unsigned c = 0;
    while (c < m && red.at(m, r, c).v == 0) ++c;
    if (c == m) fail(Errc::not_member, "matrix is singular");
    lead[r] = c;
  }
  BruhatCoords out;
  out.perm.assign(m, 0);
  for (unsigned r = 0; r < m; ++r) out.perm[lead[r]] = r;
  const GroupElem n = weyl_rep(ctx, out.perm);

  GroupElem u2 = ctx.identity();
  GroupElem h = ctx.identity();
  for (unsigned r = 0; r < m; ++r) {
    const unsigned c = lead[r];
    const FieldElem lv = red.at(m, r, c);
    // red row r = h_rr * n_{r,c} * (row c of u2)
    h.at(m, r, r) = F.div(lv, n.at(m, r, c));
    const FieldElem s = F.inv(lv);
    for (unsigned j = c + 1; j < m; ++j) u2.at(m, c, j) = F.mul(s, red.at(m, r, j));
  }
  const GroupElem rhs = ctx.mat_mul(h, ctx.mat_mul(n, u2));
  const GroupElem u1 = ctx.mat_mul(g, ctx.mat_inverse(rhs));
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i + 1; j < m; ++j) out.u1.push_back(u1.at(m, i, j));
  }
  for (unsigned i = 0; i + 1 < m; ++i) out.t.push_back(h.at(m, i, i));
  for (const auto& [i, j] : u2_positions(out.perm)) out.u2.push_back(u2.at(m, i, j));
  return out;
}

mpz_class cell_size(const GroupCtx& ctx, const Perm& perm) {
  require_sl(ctx);
  const unsigned m = ctx.dim();
  check_perm(perm, m);
  const mpz_class q(static_cast<unsigned long>(ctx.field().q()));
  mpz_class a, b;
  mpz_pow_ui(a.get_mpz_t(), q.get_mpz_t(), m * (m - 1) / 2 + inversions(perm));
  const mpz_class q1 = q - 1;
  mpz_pow_ui(b.get_mpz_t(), q1.get_mpz_t(), m - 1);
  return a * b;
}

GroupElem sample_cell(const GroupCtx& ctx, const Perm& perm, Rng& rng) {
  require_sl(ctx);
  const FieldCtx& F = ctx.field();
  const unsigned m = ctx.dim();
  check_perm(perm, m);
  BruhatCoords c;
  c.perm = perm;
  c.u1.resize(m * (m - 1) / 2);
  for (auto& x : c.u1) x = random_elem(F, rng);
  c.t.resize(m - 1);
  for (auto& x : c.t) x = random_unit(F, rng);
  c.u2.resize(inversions(perm));
  for (auto& x : c.u2) x = random_elem(F, rng);
  return compose(ctx, c);
}

GroupElem sample_sl(const GroupCtx& ctx, Rng& rng) {
  require_sl(ctx);
  const unsigned m = ctx.dim();
  const std::uint64_t q = ctx.field().q();
  if (m == 2) {
    // Cell weights q^{d_w}: w0 with probability q/(q+1).
    const bool big = uniform_below(rng, q + 1) < q;
    return sample_cell(ctx, big ? longest_element(2) : Perm{0, 1}, rng);
  }
  // Cells are weighted by q^{d_w}; the common factor q^{|Phi+|}(q-1)^{m-1}
  // cancels.
  const auto perms = weyl_elements(m);
  const mpz_class qq(static_cast<unsigned long>(q));
  std::vector<mpz_class> w(perms.size());
  mpz_class total = 0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    mpz_pow_ui(w[i].get_mpz_t(), qq.get_mpz_t(), inversions(perms[i]));
    total += w[i];
  }
  mpz_class r = uniform_mpz(rng, total);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (r < w[i]) return sample_cell(ctx, perms[i], rng);
    r -= w[i];
  }
  return sample_cell(ctx, perms.back(), rng);
}

void for_each_in_cell(const GroupCtx& ctx, const Perm& perm, const std::function<void(const GroupElem&)>& fn) {
  require_sl(ctx);
  const unsigned m = ctx.dim();
  check_perm(perm, m);
  const std::uint64_t q = ctx.field().q();
  BruhatCoords c;
  c.perm = perm;
  c.u1.assign(m * (m - 1) / 2, FieldElem{0});
  c.t.assign(m - 1, FieldElem{1});
  c.u2.assign(inversions(perm), FieldElem{0});
  // Odometer over (u2, t, u1), u2 fastest.
  std::vector<FieldElem*> digits;
  std::vector<std::uint64_t> lo;
  for (auto& x : c.u2) digits.push_back(&x), lo.push_back(0);
  for (auto& x : c.t) digits.push_back(&x), lo.push_back(1);
  for (auto& x : c.u1) digits.push_back(&x), lo.push_back(0);
  const GroupElem n = weyl_rep(ctx, perm);
  const auto pos2 = u2_positions(perm);
  for (;;) {
    GroupElem u1 = ctx.identity();
    std::size_t k = 0;
    for (unsigned i = 0; i < m; ++i) {
      for (unsigned j = i + 1; j < m; ++j) u1.at(m, i, j) = c.u1[k++];
    }
    GroupElem u2 = ctx.identity();
    for (std::size_t r = 0; r < pos2.size(); ++r) u2.at(m, pos2[r].first, pos2[r].second) = c.u2[r];
    fn(ctx.mat_mul(ctx.mat_mul(u1, torus(ctx, c.t)), ctx.mat_mul(n, u2)));
    std::size_t d = 0;
    while (d < digits.size()) {
      if (++digits[d]->v < q) break;
      digits[d]->v = lo[d];
      ++d;
    }
    if (d == digits.size()) break;
  }
}

// ---- SU_3 ----

Su3Unipotent su3_chart(const GroupCtx& ctx, FieldElem a, FieldElem b, FieldElem c) {
  require_su3(ctx);
  const FieldCtx& F = ctx.field();
  const Su3Data& d = ctx.su3();
  Su3Unipotent x;
  if (F.p() == 2) {
    const FieldElem w = d.omega;
    const FieldElem ww = F.mul(w, F.frobenius(w, d.half_degree));
    x.t = F.add(a, F.mul(w, b));
    const FieldElem n = F.add(F.add(F.mul(a, a), F.mul(a, b)), F.mul(ww, F.mul(b, b)));
    x.u = F.add(F.mul(w, n), c);
  } else {
    const FieldElem i = d.iota;
    const FieldElem i2 = F.mul(i, i);
    x.t = F.add(a, F.mul(i, b));
    const FieldElem n = F.sub(F.mul(a, a), F.mul(i2, F.mul(b, b)));
    x.u = F.add(F.neg(F.div(n, F.from_int(2))), F.mul(i, c));
  }
  return x;
}

namespace {

GroupElem su3_u(const GroupCtx& ctx, const Su3Unipotent& x) {
  const FieldCtx& F = ctx.field();
  GroupElem g = ctx.identity();
  g.at(3, 0, 1) = x.t;
  g.at(3, 0, 2) = x.u;
  g.at(3, 1, 2) = F.neg(F.frobenius(x.t, ctx.su3().half_degree));
  return g;
}

GroupElem su3_torus(const GroupCtx& ctx, FieldElem lambda) {
  const FieldCtx& F = ctx.field();
  if (lambda.v == 0) fail(Errc::zero_torus_param, "torus parameter must be nonzero");
  const FieldElem sl = F.frobenius(lambda, ctx.su3().half_degree);
  GroupElem h;
  h.at(3, 0, 0) = lambda;
  h.at(3, 1, 1) = F.div(sl, lambda);
  h.at(3, 2, 2) = F.inv(sl);
  return h;
}

GroupElem to_identity_form(const GroupCtx& ctx, const GroupElem& g) {
  const Su3Data& d = ctx.su3();
  return ctx.mat_mul(ctx.mat_mul(d.conj, g), d.conj_inv);
}

GroupElem su3_n0(const GroupCtx& ctx) {
  const FieldCtx& F = ctx.field();
  GroupElem n;
  n.at(3, 0, 2) = F.one();
  n.at(3, 1, 1) = F.neg(F.one());
  n.at(3, 2, 0) = F.one();
  return n;
}

Su3Unipotent random_unipotent(const GroupCtx& ctx, Rng& rng) {
  const auto& sub = ctx.su3().subfield;
  auto pick = [&] { return sub[uniform_below(rng, sub.size())]; };
  const FieldElem a = pick(), b = pick(), c = pick();
  return su3_chart(ctx, a, b, c);
}

}  // namespace

GroupElem su3_big_cell(const GroupCtx& ctx, const Su3Unipotent& x, FieldElem lambda, const Su3Unipotent& y) {
  require_su3(ctx);
  const GroupElem g =
      ctx.mat_mul(ctx.mat_mul(su3_u(ctx, x), su3_torus(ctx, lambda)), ctx.mat_mul(su3_n0(ctx), su3_u(ctx, y)));
  return to_identity_form(ctx, g);
}

GroupElem su3_borel(const GroupCtx& ctx, const Su3Unipotent& x, FieldElem lambda) {
  require_su3(ctx);
  return to_identity_form(ctx, ctx.mat_mul(su3_u(ctx, x), su3_torus(ctx, lambda)));
}

Su3Sample su3_sample(const GroupCtx& ctx, Rng& rng) {
  require_su3(ctx);
  const FieldCtx& F = ctx.field();
  const Su3Unipotent x = random_unipotent(ctx, rng);
  const FieldElem lambda = random_unit(F, rng);
  const Su3Unipotent y = random_unipotent(ctx, rng);
  return {su3_big_cell(ctx, x, lambda, y), false};
}

GroupElem su3_uniform(const GroupCtx& ctx, Rng& rng) {
  require_su3(ctx);
  const std::uint64_t qt = ctx.su3().qt;
  const std::uint64_t qt3 = qt * qt * qt;
  if (uniform_below(rng, qt3 + 1) < qt3) return su3_sample(ctx, rng).g;
  const Su3Unipotent x = random_unipotent(ctx, rng);
  return su3_borel(ctx, x, random_unit(ctx.field(), rng));
}

mpz_class su3_big_cell_size(std::uint64_t qt) {
  const mpz_class t(static_cast<unsigned long>(qt));
  return t * t * t * t * t * t * (t * t - 1);
}

void su3_for_each(const GroupCtx& ctx, const std::function<void(const GroupElem&)>& fn) {
  require_su3(ctx);
  const FieldCtx& F = ctx.field();
  const auto& sub = ctx.su3().subfield;
  std::vector<Su3Unipotent> us;
  us.reserve(sub.size() * sub.size() * sub.size());
  for (FieldElem a : sub) {
    for (FieldElem b : sub) {
      for (FieldElem c : sub) us.push_back(su3_chart(ctx, a, b, c));
    }
  }
  const GroupElem n0 = su3_n0(ctx);
  for (const auto& x : us) {
    const GroupElem ux = su3_u(ctx, x);
    for (std::uint64_t l = 1; l < F.q(); ++l) {
      const GroupElem xh = ctx.mat_mul(ux, su3_torus(ctx, FieldElem{l}));
      fn(to_identity_form(ctx, xh));
      const GroupElem xhn = ctx.mat_mul(xh, n0);
      for (const auto& y : us) fn(to_identity_form(ctx, ctx.mat_mul(xhn, su3_u(ctx, y))));
    }
  }
}

}  // namespace cayley::bruhat
