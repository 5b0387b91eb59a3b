#include <doctest.h>

#include "cayley/error.hpp"
#include "cayley/sz.hpp"
#include "oracles.hpp"

using namespace cayley;
using namespace cayley::sz;

namespace {

// Evaluates with the oracle field and counts zeros on F_q^d by odometer.
std::uint64_t oracle_affine_zeros(const oracle::Field& O, const Poly& p) {
  const unsigned d = p.nvars();
  const std::uint64_t q = O.q();
  std::vector<std::uint64_t> x(d, 0);
  std::uint64_t zeros = 0;
  while (true) {
    std::uint64_t s = 0;
    for (const auto& t : p.terms()) {
      std::uint64_t m = t.coeff.v;
      for (unsigned i = 0; i < d; ++i) m = O.mul(m, O.pow(x[i], t.exps[i]));
      s = O.add(s, m);
    }
    zeros += s == 0;
    unsigned i = 0;
    while (i < d && ++x[i] == q) x[i++] = 0;
    if (i == d) break;
  }
  return zeros;
}

Term term(std::uint64_t c, std::vector<unsigned> e) { return {{c}, std::move(e)}; }

}  // namespace

TEST_CASE("polynomial normal form") {
  auto F = FieldCtx::make(5, 1);
  const Poly p(*F, 2, {term(3, {1, 0}), term(2, {1, 0}), term(1, {0, 2})});
  CHECK(p.terms().size() == 1);
  CHECK(p.degree() == 2);
  CHECK(Poly(*F, 2, {term(1, {1, 1}), term(4, {1, 1})}).is_zero());
  const Poly q(*F, 2, {term(1, {0, 2}), term(3, {1, 0})});
  const Poly r(*F, 2, {term(3, {1, 0}), term(1, {0, 2})});
  CHECK(q == r);
  CHECK_THROWS_AS(Poly(*F, 2, {term(1, {1})}), Error);
  CHECK_THROWS_AS(Poly(*F, 1, {term(7, {1})}), Error);

  const Poly x = Poly::variable(*F, 2, 0), y = Poly::variable(*F, 2, 1);
  const Poly xy1 = sub(*F, mul(*F, x, y), Poly::constant(*F, 2, F->one()));
  CHECK(xy1.degree() == 2);
  CHECK(sub(*F, xy1, xy1).is_zero());
  const std::vector<FieldElem> pt{{2}, {3}};
  CHECK(xy1.eval(*F, pt).v == 0);
  CHECK(scale(*F, xy1, {2}).eval(*F, std::vector<FieldElem>{{1}, {1}}).v == 0);
  CHECK(add(*F, x, y).eval(*F, pt).v == 0);
}

TEST_CASE("affine examples") {
  auto F5 = FieldCtx::make(5, 1);
  const AffineCount x1 = zero_count_affine(Poly::variable(*F5, 2, 0), *F5);
  CHECK(x1.count == 5);
  CHECK(x1.points == 25);
  CHECK(x1.bound == 2 * 1 * 5);
  CHECK(x1.bound_holds);
  CHECK(zero_count_affine(Poly::constant(*F5, 2, F5->one()), *F5).count == 0);

  auto F7 = FieldCtx::make(7, 1);
  const Poly x = Poly::variable(*F7, 2, 0), y = Poly::variable(*F7, 2, 1);
  const AffineCount hyp = zero_count_affine(sub(*F7, mul(*F7, x, y), Poly::constant(*F7, 2, F7->one())), *F7);
  CHECK(hyp.count == 6);
  CHECK(hyp.bound == 2 * 2 * 7);

  // x^q - x vanishes on every point without being the zero polynomial.
  const Poly frob(*F5, 1, {term(1, {5}), term(4, {1})});
  const AffineCount fz = zero_count_affine(frob, *F5);
  CHECK(fz.identically_zero);
  CHECK(fz.count == 5);

  CHECK_THROWS_AS(zero_count_affine(Poly::variable(*F7, 10, 0), *F7), Error);
}

TEST_CASE("fuzz corpus respects the affine bound and matches the oracle") {
  Rng rng = stream(1, 0);
  const std::vector<std::pair<std::uint64_t, unsigned>> fields{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {2, 2}, {3, 2}, {2, 3}};
  std::size_t violations = 0, oracle_mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto [p, k] = fields[uniform_below(rng, fields.size())];
    auto F = FieldCtx::make(p, k);
    const unsigned d = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    const unsigned D = 1 + static_cast<unsigned>(uniform_below(rng, 5));
    const Poly P = random_poly(*F, d, D, 1 + static_cast<unsigned>(uniform_below(rng, 6)), rng);
    CHECK(P.degree() == D);
    const AffineCount c = zero_count_affine(P, *F);
    violations += !c.bound_holds;
    if (t % 10 == 0) oracle_mismatch += c.count != oracle_affine_zeros(oracle::make_field(p, k), P);
  }
  CHECK(violations == 0);
  CHECK(oracle_mismatch == 0);
}

TEST_CASE("matrix-entry polynomials") {
  auto F = FieldCtx::make(7, 1);
  const Poly d = det_poly(*F, 4, 2, 0);
  CHECK(d.degree() == 2);
  CHECK(d.terms().size() == 2);
  const Poly tr = trace_poly(*F, 8, 2, 1);
  CHECK(tr.terms().size() == 2);
  CHECK(tr.terms()[0].exps.size() == 8);
  const Poly ab = product_entry(*F, 8, 2, 0, 1, 0, 0);
  CHECK(ab.degree() == 2);
  CHECK(ab.terms().size() == 2);
  CHECK(entry(*F, 4, 2, 0, 1, 0) == Poly::variable(*F, 4, 2));
}

TEST_CASE("group examples") {
  auto G5 = GroupCtx::sl(2, FieldCtx::make(5, 1));
  const FieldCtx& F5 = G5->field();
  const GroupCount g11 = zero_count_group(entry(F5, 4, 2, 0, 0, 0), *G5);
  CHECK(g11.count == 20);
  CHECK(g11.order == 120);
  CHECK(g11.ratio == doctest::Approx(20.0 / 24.0));
  CHECK(zero_count_group_bruhat(entry(F5, 4, 2, 0, 0, 0), *G5).count == 20);

  const Poly det1 = sub(F5, det_poly(F5, 4, 2, 0), Poly::constant(F5, 4, F5.one()));
  const GroupCount dz = zero_count_group(det1, *G5);
  CHECK(dz.identically_zero);
  CHECK(dz.count == 120);

  auto G7 = GroupCtx::sl(2, FieldCtx::make(7, 1));
  const FieldCtx& F7 = G7->field();
  const Poly tr2 = sub(F7, trace_poly(F7, 4, 2, 0), Poly::constant(F7, 4, F7.from_int(2)));
  const GroupCount t = zero_count_group(tr2, *G7);
  // Trace 2: the identity plus the q^2 - 1 nontrivial unipotents.
  CHECK(t.count == 49);
  CHECK(t.ratio <= 3.0);

  CHECK_THROWS_AS(zero_count_group(Poly::variable(F7, 3, 0), *G7), Error);
}

TEST_CASE("index enumeration and Bruhat streaming agree") {
  for (auto G : {GroupCtx::sl(2, FieldCtx::make(5, 1)), GroupCtx::sl(3, FieldCtx::make(2, 1)),
                 GroupCtx::su3(FieldCtx::make(2, 2))}) {
    Rng rng = stream(2, G->order_u64());
    const unsigned nv = G->dim() * G->dim();
    for (int t = 0; t < 10; ++t) {
      const Poly P = random_poly(G->field(), nv, 1 + static_cast<unsigned>(uniform_below(rng, 3)), 3, rng);
      CHECK(zero_count_group(P, *G).count == zero_count_group_bruhat(P, *G).count);
    }
  }
}

TEST_CASE("twisted ratios on SU_3(F_4)") {
  auto G = GroupCtx::su3(FieldCtx::make(2, 2));
  Rng rng = stream(3, 0);
  for (int t = 0; t < 50; ++t) {
    const Poly P = random_poly(G->field(), 9, 1 + static_cast<unsigned>(uniform_below(rng, 3)), 4, rng);
    const GroupCount c = zero_count_group(P, *G);
    CHECK(c.twist == 2);
    CHECK(c.scale == doctest::Approx(P.degree() * 216 / 2.0));
    if (!c.identically_zero) CHECK(c.ratio <= 10.0);
  }
}

TEST_CASE("pairs") {
  auto G = GroupCtx::sl(2, FieldCtx::make(3, 1));
  const FieldCtx& F = G->field();
  const Poly comm = sub(F, product_entry(F, 8, 2, 0, 1, 0, 0), product_entry(F, 8, 2, 1, 0, 0, 0));
  const PairCount c = zero_count_pairs(comm, *G);
  CHECK(c.count == 240);
  CHECK(c.order == 24);
  CHECK(c.ratio == doctest::Approx(240.0 / (2 * 576 / 3.0)));
  CHECK(c.fubini_holds);
  CHECK(c.count <= c.fubini_bound);

  // Depends only on a: the count factors.
  const Poly a11 = entry(F, 8, 2, 0, 0, 0);
  const PairCount only = zero_count_pairs(a11, *G);
  CHECK(only.count == 24 * zero_count_group(entry(F, 4, 2, 0, 0, 0), *G).count);

  Poly trab = add(F, product_entry(F, 8, 2, 0, 1, 0, 0), product_entry(F, 8, 2, 0, 1, 1, 1));
  Poly trba = add(F, product_entry(F, 8, 2, 1, 0, 0, 0), product_entry(F, 8, 2, 1, 0, 1, 1));
  CHECK(sub(F, trab, trba).is_zero());
  const PairCount z = zero_count_pairs(sub(F, trab, trba), *G);
  CHECK(z.identically_zero);

  auto big = GroupCtx::sl(2, FieldCtx::make(29, 1));
  CHECK_THROWS_AS(zero_count_pairs(entry(big->field(), 8, 2, 0, 0, 0), *big), Error);
}
