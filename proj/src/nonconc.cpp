#include "cayley/nonconc.hpp"

#include <array>
#include <cmath>
#include <map>

#include "cayley/error.hpp"
#include "cayley/parallel.hpp"
#include "cayley/words.hpp"

namespace cayley::nonconc {

const char* family_name(TrapFamily f) {
  switch (f) {
    case TrapFamily::Subfield: return "subfield";
    case TrapFamily::StructuralSL2: return "structural_sl2";
    case TrapFamily::XNCert: return "xn_cert";
    case TrapFamily::ProductDiagonal: return "product_diagonal";
  }
  return "?";
}

unsigned default_word_length(const GroupCtx& ctx, double c0) {
  const double lg = std::log(ctx.order().get_d());
  return 2 * static_cast<unsigned>(std::floor(c0 * lg));
}

namespace {

struct Counts {
  std::uint64_t hits = 0;
  std::uint64_t extra = 0;   // degenerate hits or discarded pairs
  std::uint64_t trials = 0;  // accepted samples
};

// Samples are split into fixed chunks with their own RNG streams so that the
// result is independent of the thread count.
template <class Trial>
Counts run_chunks(std::uint64_t samples, std::uint64_t seed, Trial trial) {
  const std::uint64_t chunk = words::kTrialChunk;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  std::vector<Counts> parts(chunks);
  parallel_tasks(chunks, [&](std::size_t c) {
    Rng rng = stream(seed, c);
    const std::uint64_t count = std::min(samples, (c + 1) * chunk) - c * chunk;
    for (std::uint64_t t = 0; t < count; ++t) trial(rng, parts[c]);
  });
  Counts total;
  for (const auto& p : parts) {
    total.hits += p.hits;
    total.extra += p.extra;
    total.trials += p.trials;
  }
  return total;
}

void finish(TrapReport& r) {
  r.trapped_fraction = r.samples ? static_cast<double>(r.trapped) / static_cast<double>(r.samples) : 0.0;
  r.std_error = r.samples ? std::sqrt(r.trapped_fraction * (1 - r.trapped_fraction) / static_cast<double>(r.samples))
                          : 0.0;
  r.pass = r.trapped_fraction <= r.threshold;
}

void require_sl2(const GroupCtx& ctx) {
  if (ctx.family() != Family::SL || ctx.dim() != 2) fail(Errc::unsupported_family, "this test is SL_2-specific");
}

}  // namespace

TrapReport trap_subfield(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b, unsigned n,
                         std::uint64_t samples, unsigned j, std::uint64_t seed) {
  if (ctx.family() == Family::Cyclic) fail(Errc::unsupported_family, "no field for the cyclic family");
  const FieldCtx& F = ctx.field();
  if (F.k() == 1) fail(Errc::no_proper_subfield, "prime field has no proper subfield");
  if (j <= 1 || F.k() % j != 0) fail(Errc::bad_divisor, "subfield index must be a divisor of k greater than 1");
  const Counts c = run_chunks(samples, seed, [&](Rng& rng, Counts& acc) {
    const GroupElem g = words::evaluate(ctx, words::sample_word(n, rng), a, b);
    ++acc.trials;
    if (ctx.is_unipotent(g)) {
      ++acc.extra;
      return;
    }
    for (FieldElem coeff : ctx.char_poly(g)) {
      if (!F.subfield_member(coeff, j)) return;
    }
    ++acc.hits;
  });
  TrapReport r;
  r.family = TrapFamily::Subfield;
  r.subfield_index = j;
  r.n = n;
  r.samples = c.trials;
  r.trapped = c.hits + c.extra;
  r.subfield_fraction = samples ? static_cast<double>(c.hits) / static_cast<double>(samples) : 0.0;
  r.degenerate_fraction = samples ? static_cast<double>(c.extra) / static_cast<double>(samples) : 0.0;
  finish(r);
  return r;
}

TrapReport trap_structural_sl2(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b, unsigned n,
                               std::uint64_t samples, std::uint64_t seed) {
  require_sl2(ctx);
  const FieldElem two = ctx.field().from_int(2);
  const Counts c = run_chunks(samples, seed, [&](Rng& rng, Counts& acc) {
    // Resample until the pair does not commute in F_2; bounded because
    // commuting pairs have probability at most 1/2 for n >= 1.
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const words::Word w = words::sample_word(n, rng);
      const words::Word w2 = words::sample_word(n, rng);
      if (words::commute_in_free_group(w, w2)) {
        ++acc.extra;
        continue;
      }
      const GroupElem x = words::evaluate(ctx, w, a, b);
      const GroupElem y = words::evaluate(ctx, w2, a, b);
      const GroupElem comm = ctx.mul(ctx.mul(x, y), ctx.mul(ctx.inv(x), ctx.inv(y)));
      ++acc.trials;
      if (ctx.trace(comm) == two) ++acc.hits;
      return;
    }
  });
  TrapReport r;
  r.family = TrapFamily::StructuralSL2;
  r.n = n;
  r.samples = c.trials;
  r.trapped = c.hits;
  r.discarded = c.extra;
  finish(r);
  return r;
}

TrapReport product_diag_trap(const GroupCtx& ctx, const GroupElem& a1, const GroupElem& b1, const GroupElem& a2,
                             const GroupElem& b2, unsigned n, std::uint64_t samples, std::uint64_t seed) {
  require_sl2(ctx);
  const Counts c = run_chunks(samples, seed, [&](Rng& rng, Counts& acc) {
    const words::Word w = words::sample_word(n, rng);
    ++acc.trials;
    if (ctx.trace(words::evaluate(ctx, w, a1, b1)) == ctx.trace(words::evaluate(ctx, w, a2, b2))) ++acc.hits;
  });
  TrapReport r;
  r.family = TrapFamily::ProductDiagonal;
  r.n = n;
  r.samples = c.trials;
  r.trapped = c.hits;
  finish(r);
  return r;
}

// ---- X_N certificate ----

namespace {

using Exps = std::array<unsigned, 4>;

struct MonomialBasis {
  std::vector<Exps> mons;
  // up[i][v]: index of mons[i] * x_v, or -1 above degree D.
  std::vector<std::array<int, 4>> up;
};

MonomialBasis monomials(unsigned D) {
  MonomialBasis b;
  std::map<Exps, int> index;
  for (unsigned d = 0; d <= D; ++d) {
    for (unsigned e0 = 0; e0 <= d; ++e0) {
      for (unsigned e1 = 0; e0 + e1 <= d; ++e1) {
        for (unsigned e2 = 0; e0 + e1 + e2 <= d; ++e2) {
          const Exps e{e0, e1, e2, d - e0 - e1 - e2};
          index[e] = static_cast<int>(b.mons.size());
          b.mons.push_back(e);
        }
      }
    }
  }
  b.up.resize(b.mons.size());
  for (std::size_t i = 0; i < b.mons.size(); ++i) {
    for (int v = 0; v < 4; ++v) {
      Exps e = b.mons[i];
      ++e[v];
      const auto it = index.find(e);
      b.up[i][v] = it == index.end() ? -1 : it->second;
    }
  }
  return b;
}

using Mat = std::vector<FieldElem>;  // square, row-major

Mat rho(const GroupCtx& ctx, const MonomialBasis& basis, const GroupElem& g) {
  const FieldCtx& F = ctx.field();
  const std::size_t dim = basis.mons.size();
  const GroupElem h = ctx.inv(g);
  // Variable v = 2i + j maps to h_{i0} x_j + h_{i1} x_{2+j}.
  std::array<std::array<std::pair<int, FieldElem>, 2>, 4> lin;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) lin[2 * i + j] = {{{j, h.at(2, i, 0)}, {2 + j, h.at(2, i, 1)}}};
  }
  Mat m(dim * dim, F.zero());
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<FieldElem> poly(dim, F.zero());
    poly[0] = F.one();  // monomial 1 has index 0
    for (int v = 0; v < 4; ++v) {
      for (unsigned rep = 0; rep < basis.mons[col][v]; ++rep) {
        std::vector<FieldElem> next(dim, F.zero());
        for (std::size_t i = 0; i < dim; ++i) {
          if (poly[i].v == 0) continue;
          for (const auto& [var, coeff] : lin[v]) {
            if (coeff.v == 0) continue;
            const int t = basis.up[i][var];
            next[t] = F.add(next[t], F.mul(poly[i], coeff));
          }
        }
        poly.swap(next);
      }
    }
    for (std::size_t r = 0; r < dim; ++r) m[r * dim + col] = poly[r];
  }
  return m;
}

Mat mat_mul(const FieldCtx& F, const Mat& a, const Mat& b, std::size_t dim) {
  Mat c(dim * dim, F.zero());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const FieldElem x = a[i * dim + k];
      if (x.v == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) c[i * dim + j] = F.add(c[i * dim + j], F.mul(x, b[k * dim + j]));
    }
  }
  return c;
}

// Incremental row-echelon basis over F_q.
class Span {
 public:
  explicit Span(const FieldCtx& F) : F_(F) {}
  bool add(std::vector<FieldElem> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const FieldElem c = v[pivots_[r]];
      if (c.v == 0) continue;
      const auto& row = rows_[r];
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (row[i].v != 0) v[i] = F_.sub(v[i], F_.mul(c, row[i]));
      }
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].v == 0) ++p;
    if (p == v.size()) return false;
    const FieldElem s = F_.inv(v[p]);
    for (auto& x : v) x = F_.mul(s, x);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t dim() const { return rows_.size(); }

 private:
  const FieldCtx& F_;
  std::vector<std::vector<FieldElem>> rows_;
  std::vector<std::size_t> pivots_;
};

// Span of the algebra generated by gens, grown by word length.
std::pair<std::size_t, unsigned> algebra_span(const FieldCtx& F, const std::vector<Mat>& gens, std::size_t dim) {
  Span span(F);
  Mat id(dim * dim, F.zero());
  for (std::size_t i = 0; i < dim; ++i) id[i * dim + i] = F.one();
  span.add(id);
  std::vector<Mat> frontier{id};
  unsigned level = 0;
  for (;; ++level) {
    std::vector<Mat> next;
    for (const auto& a : frontier) {
      for (const auto& s : gens) {
        Mat prod = mat_mul(F, a, s, dim);
        if (span.add(prod)) next.push_back(std::move(prod));
      }
    }
    if (next.empty()) break;
    frontier.swap(next);
  }
  return {span.dim(), level};
}

}  // namespace

std::vector<FieldElem> xn_rho(const GroupCtx& ctx, const GroupElem& g, unsigned D) {
  require_sl2(ctx);
  if (D > 3) fail(Errc::degree_too_large, "X_N certificate supports D <= 3");
  return rho(ctx, monomials(D), g);
}

XnResult xn_certificate(const GroupCtx& ctx, const GroupElem& x, const GroupElem& y, unsigned D) {
  require_sl2(ctx);
  if (D > 3) fail(Errc::degree_too_large, "X_N certificate supports D <= 3");
  const FieldCtx& F = ctx.field();
  const MonomialBasis basis = monomials(D);
  const std::size_t dim = basis.mons.size();

  std::vector<Mat> ball_gens;
  for (const auto& g : {x, y, ctx.inv(x), ctx.inv(y)}) ball_gens.push_back(rho(ctx, basis, g));
  const auto [span_dim, level] = algebra_span(F, ball_gens, dim);

  std::vector<Mat> full_gens;
  std::uint64_t t = 1;
  for (unsigned i = 0; i < F.k(); ++i, t *= F.p()) {
    GroupElem u = ctx.identity(), l = ctx.identity();
    u.at(2, 0, 1) = FieldElem{t};
    l.at(2, 1, 0) = FieldElem{t};
    full_gens.push_back(rho(ctx, basis, u));
    full_gens.push_back(rho(ctx, basis, l));
  }
  const auto full = algebra_span(F, full_gens, dim);

  XnResult r;
  r.span_dim = span_dim;
  r.full_dim = full.first;
  r.stabilized_at = level;
  r.module_dim = dim;
  r.proper_trap = span_dim < full.first;
  return r;
}

std::vector<TrapReport> nonconc_verdict(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b,
                                        const VerdictOptions& opt) {
  if (opt.gamma < 0) fail(Errc::invalid_argument, "gamma must be nonnegative");
  const unsigned n = default_word_length(ctx, opt.c0);
  const double threshold = std::exp(-opt.gamma * std::log(ctx.order().get_d()));
  std::vector<TrapReport> out;
  auto push = [&](TrapReport r) {
    r.gamma = opt.gamma;
    r.threshold = threshold;
    r.pass = r.trapped_fraction <= threshold;
    out.push_back(r);
  };
  if (ctx.family() != Family::Cyclic) {
    const unsigned k = ctx.field().k();
    for (unsigned j = 2; j <= k; ++j) {
      if (k % j == 0) push(trap_subfield(ctx, a, b, n, opt.samples, j, splitmix64(opt.seed + j)));
    }
  }
  if (ctx.family() == Family::SL && ctx.dim() == 2) {
    push(trap_structural_sl2(ctx, a, b, n, opt.samples, splitmix64(opt.seed ^ 0x57c7)));
    if (ctx.field().q() <= 64) {
      const XnResult xn = xn_certificate(ctx, a, b, opt.xn_degree);
      TrapReport r;
      r.family = TrapFamily::XNCert;
      r.n = xn.stabilized_at;
      r.samples = 1;
      r.trapped = xn.proper_trap ? 1 : 0;
      r.trapped_fraction = xn.proper_trap ? 1.0 : 0.0;
      push(r);
    }
  }
  return out;
}

}  // namespace cayley::nonconc
