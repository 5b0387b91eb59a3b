#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "cayley/combinat.hpp"
#include "cayley/error.hpp"
#include "cayley/nonconc.hpp"
#include "cayley/words.hpp"

using namespace cayley;
using namespace cayley::nonconc;

namespace {

GroupPtr sl2(std::uint64_t p, unsigned k = 1) { return GroupCtx::sl(2, FieldCtx::make(p, k)); }

std::pair<GroupElem, GroupElem> random_pair(const GroupCtx& G, std::uint64_t seed) {
  Rng rng = stream(seed, 0);
  const GroupElem a = G.random(rng);
  return {a, G.random(rng)};
}

// Random upper-triangular element with nonzero diagonal.
GroupElem borel(const GroupCtx& G, Rng& rng) {
  const FieldCtx& F = G.field();
  const FieldElem t{1 + uniform_below(rng, F.q() - 1)};
  GroupElem g = G.identity();
  g.at(2, 0, 0) = t;
  g.at(2, 1, 1) = F.inv(t);
  g.at(2, 0, 1) = FieldElem{uniform_below(rng, F.q())};
  return g;
}

// Every word of length n as an evaluated element, by exhaustive expansion.
std::vector<GroupElem> all_words(const GroupCtx& G, const GroupElem& a, const GroupElem& b, unsigned n) {
  std::vector<GroupElem> cur{G.identity()};
  const GroupElem letters[4] = {a, b, G.inv(a), G.inv(b)};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<GroupElem> next;
    next.reserve(cur.size() * 4);
    for (const auto& g : cur)
      for (const auto& l : letters) next.push_back(G.mul(g, l));
    cur.swap(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("default word length") {
  auto G = sl2(5);
  CHECK(default_word_length(*G) == 2 * static_cast<unsigned>(std::floor(2 * std::log(120.0))));
  CHECK(default_word_length(*G, 1.0) == 8);
}

TEST_CASE("subfield trap") {
  auto base = sl2(5);
  auto G = sl2(5, 2);
  Rng rng = stream(1, 0);
  const GroupElem a0 = base->random(rng), b0 = base->random(rng);
  const GroupElem a = G->from_entries(base->entries(a0)), b = G->from_entries(base->entries(b0));
  const TrapReport planted = trap_subfield(*G, a, b, 20, 2000, 2, 3);
  CHECK(planted.trapped_fraction == 1.0);
  CHECK(planted.family == TrapFamily::Subfield);

  const TrapReport empty = trap_subfield(*G, a, b, 0, 500, 2, 3);
  CHECK(empty.subfield_fraction == 0.0);
  CHECK(empty.degenerate_fraction == 1.0);

  const auto [x, y] = random_pair(*G, 4);
  const TrapReport rnd = trap_subfield(*G, x, y, 40, 10000, 2, 5);
  CHECK(rnd.trapped_fraction >= 0.0);
  CHECK(rnd.trapped_fraction <= 1.0);
  CHECK(rnd.std_error == doctest::Approx(std::sqrt(rnd.trapped_fraction * (1 - rnd.trapped_fraction) / 10000)));

  auto prime = sl2(7);
  CHECK_THROWS_AS(trap_subfield(*prime, prime->identity(), prime->identity(), 4, 10, 2, 0), Error);
  try {
    trap_subfield(*G, a, b, 4, 10, 3, 0);
    FAIL("expected BadDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_divisor);
  }
}

TEST_CASE("structural trap") {
  auto G = sl2(101);
  Rng rng = stream(2, 0);
  const GroupElem a = borel(*G, rng), b = borel(*G, rng);
  const TrapReport planted = trap_structural_sl2(*G, a, b, 20, 2000, 1);
  CHECK(planted.trapped_fraction == 1.0);
  CHECK(planted.discarded > 0);

  const auto [x, y] = random_pair(*G, 3);
  const TrapReport rnd = trap_structural_sl2(*G, x, y, default_word_length(*G), 4000, 2);
  CHECK(rnd.trapped_fraction <= 0.05);

  auto S = GroupCtx::sp4(FieldCtx::make(3, 1));
  try {
    trap_structural_sl2(*S, S->identity(), S->identity(), 4, 10, 0);
    FAIL("expected UnsupportedFamily");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_family);
  }
}

TEST_CASE("product-diagonal trap") {
  auto G = sl2(101);
  const auto [a, b] = random_pair(*G, 5);
  CHECK(product_diag_trap(*G, a, b, a, b, 30, 2000, 1).trapped_fraction == 1.0);
  const auto [c, d] = random_pair(*G, 6);
  CHECK(product_diag_trap(*G, a, b, c, d, 0, 100, 1).trapped_fraction == 1.0);
  CHECK(product_diag_trap(*G, a, b, c, d, 40, 4000, 1).trapped_fraction <= 0.1);
}

TEST_CASE("sampling is reproducible and thread-count independent") {
  auto G = sl2(7, 2);
  const auto [a, b] = random_pair(*G, 7);
  const TrapReport r1 = trap_subfield(*G, a, b, 12, 9000, 2, 11);
  const TrapReport r2 = trap_subfield(*G, a, b, 12, 9000, 2, 11);
  CHECK(r1.trapped == r2.trapped);
  CHECK(r1.samples == 9000);
}

TEST_CASE("estimators are unbiased against exhaustive enumeration on SL_2(F_3)") {
  auto G = sl2(3);
  const auto [a1, b1] = random_pair(*G, 8);
  const auto [a2, b2] = random_pair(*G, 9);
  const unsigned n = 6;
  const auto w1 = all_words(*G, a1, b1, n), w2 = all_words(*G, a2, b2, n);
  std::size_t equal = 0;
  for (std::size_t i = 0; i < w1.size(); ++i) equal += G->trace(w1[i]) == G->trace(w2[i]);
  const double exact = static_cast<double>(equal) / static_cast<double>(w1.size());

  const std::uint64_t per = 1000;
  double sum = 0;
  for (std::uint64_t s = 0; s < 100; ++s) sum += product_diag_trap(*G, a1, b1, a2, b2, n, per, 1000 + s).trapped_fraction;
  const double mean = sum / 100;
  const double sigma = std::sqrt(exact * (1 - exact) / (100.0 * per));
  CHECK(std::fabs(mean - exact) <= 3 * sigma);
}

TEST_CASE("coset mass is non-increasing in the word length") {
  // sup over left cosets gH of the Borel subgroup H; gH is determined by the
  // line through the first column.
  auto G = sl2(3);
  const auto [a, b] = random_pair(*G, 12);
  const FieldCtx& F = G->field();
  auto line = [&](const GroupElem& g) {
    FieldElem x = g.at(2, 0, 0), y = g.at(2, 1, 0);
    const FieldElem s = x.v ? F.inv(x) : F.inv(y);
    return std::pair<std::uint64_t, std::uint64_t>{F.mul(x, s).v, F.mul(y, s).v};
  };
  double prev = 1.0;
  for (unsigned n = 0; n <= 6; ++n) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> mass;
    const auto ws = all_words(*G, a, b, n);
    for (const auto& g : ws) ++mass[line(g)];
    std::uint64_t top = 0;
    for (const auto& [k, v] : mass) top = std::max(top, v);
    const double sup = static_cast<double>(top) / static_cast<double>(ws.size());
    CHECK(sup <= prev + 1e-15);
    prev = sup;
  }
}

TEST_CASE("X_N certificate") {
  auto G = sl2(7);
  const XnResult id = xn_certificate(*G, G->identity(), G->identity(), 2);
  CHECK(id.proper_trap);
  CHECK(id.span_dim == 1);
  CHECK(id.module_dim == 15);

  Rng rng = stream(13, 0);
  const GroupElem u = borel(*G, rng), v = borel(*G, rng);
  const XnResult b = xn_certificate(*G, u, v, 2);
  CHECK(b.proper_trap);
  CHECK(b.span_dim < b.full_dim);

  int generating = 0;
  for (std::uint64_t seed = 0; generating < 10 && seed < 100; ++seed) {
    const auto [x, y] = random_pair(*G, 100 + seed);
    const std::vector<GroupElem> gens{x, y};
    if (combinat::generated_subgroup(*G, gens).size() != 336) continue;
    ++generating;
    const XnResult r = xn_certificate(*G, x, y, 2);
    CHECK_FALSE(r.proper_trap);
    CHECK(r.span_dim == r.full_dim);
  }
  CHECK(generating == 10);

  // Conjugation covariance.
  const auto [x, y] = random_pair(*G, 100);
  const bool v0 = xn_certificate(*G, x, y, 2).proper_trap;
  for (int t = 0; t < 100; ++t) {
    const GroupElem h = G->random(rng), hi = G->inv(h);
    REQUIRE(xn_certificate(*G, G->mul(G->mul(h, x), hi), G->mul(G->mul(h, y), hi), 2).proper_trap == v0);
    REQUIRE(xn_certificate(*G, G->mul(G->mul(h, u), hi), G->mul(G->mul(h, v), hi), 2).proper_trap);
  }

  // rho is a representation.
  for (int t = 0; t < 20; ++t) {
    const GroupElem g = G->random(rng), k = G->random(rng);
    const auto rg = xn_rho(*G, g, 1), rk = xn_rho(*G, k, 1), rgk = xn_rho(*G, G->mul(g, k), 1);
    const std::size_t d = 5;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        FieldElem s{0};
        for (std::size_t l = 0; l < d; ++l) s = G->field().add(s, G->field().mul(rg[i * d + l], rk[l * d + j]));
        REQUIRE(s == rgk[i * d + j]);
      }
  }
  CHECK_THROWS_AS(xn_certificate(*G, x, y, 4), Error);
}

TEST_CASE("verdicts") {
  auto G = sl2(7, 2);
  auto base = sl2(7);
  Rng rng = stream(14, 0);
  const GroupElem a = G->from_entries(base->entries(base->random(rng)));
  const GroupElem b = G->from_entries(base->entries(base->random(rng)));
  VerdictOptions opt;
  opt.samples = 2000;
  const auto planted = nonconc_verdict(*G, a, b, opt);
  CHECK(std::any_of(planted.begin(), planted.end(), [](const TrapReport& r) { return !r.pass; }));

  const auto [x, y] = random_pair(*G, 15);
  opt.gamma = 0;
  for (const auto& r : nonconc_verdict(*G, x, y, opt)) {
    CHECK(r.threshold == 1.0);
    CHECK(r.pass);
  }
  opt.gamma = -1;
  CHECK_THROWS_AS(nonconc_verdict(*G, x, y, opt), Error);
}
