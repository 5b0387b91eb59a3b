#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "cayley/error.hpp"
#include "cayley/group.hpp"
#include "oracles.hpp"

using namespace cayley;

namespace {

GroupPtr sl(unsigned m, std::uint64_t p, unsigned k = 1) { return GroupCtx::sl(m, FieldCtx::make(p, k)); }

GroupElem mat(const GroupCtx& G, std::vector<std::uint64_t> e) {
  GroupElem g;
  for (std::size_t i = 0; i < e.size(); ++i) g.e[i].v = e[i];
  (void)G;
  return g;
}

}  // namespace

TEST_CASE("orders match the formulas and brute-force enumeration") {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto [p, k] = q == 4 ? std::pair<std::uint64_t, unsigned>{2, 2} : std::pair<std::uint64_t, unsigned>{q, 1};
    auto G = sl(2, p, k);
    const auto O = oracle::make_field(p, k);
    CHECK(G->order() == q * (q * q - 1));
    CHECK(G->order_u64() == oracle::enumerate_sl(O, 2).size());
  }
  CHECK(sl(3, 2)->order() == 168);
  CHECK(oracle::enumerate_sl(oracle::make_field(2, 1), 3).size() == 168);
  CHECK(sl(2, 5)->order() == 120);
  CHECK(sl(2, 2)->order() == 6);
  CHECK(sl(4, 2)->order() == 20160);
  CHECK(GroupCtx::sp4(FieldCtx::make(3, 1))->order() == 81 * 8 * 80);
  CHECK(GroupCtx::su3(FieldCtx::make(2, 2))->order() == 8 * 3 * 9);
  CHECK(GroupCtx::su3(FieldCtx::make(3, 2))->order() == 27 * 8 * 28);
  CHECK(GroupCtx::cyclic(6)->order() == 6);
}

TEST_CASE("enumeration of SL_2(F_4) equals the oracle's matrix set") {
  auto G = sl(2, 2, 2);
  const auto O = oracle::make_field(2, 2);
  std::set<std::vector<std::uint64_t>> lib, ref;
  for (std::uint64_t i = 0; i < G->order_u64(); ++i) lib.insert(G->entries(G->element_at(i)));
  for (const auto& m : oracle::enumerate_sl(O, 2)) ref.insert(m);
  CHECK(lib == ref);
}

TEST_CASE("products agree with oracle matrix multiplication") {
  for (auto [m, p, k] : std::vector<std::tuple<unsigned, std::uint64_t, unsigned>>{{2, 7, 1}, {2, 3, 2}, {3, 5, 1}, {3, 2, 2}, {4, 3, 1}}) {
    auto G = sl(m, p, k);
    const auto O = oracle::make_field(p, k);
    Rng rng = stream(7, m * 100 + p);
    for (int t = 0; t < 200; ++t) {
      const GroupElem a = G->random(rng), b = G->random(rng);
      REQUIRE(G->entries(G->mul(a, b)) == oracle::mat_mul(O, G->entries(a), G->entries(b), m));
    }
  }
}

TEST_CASE("membership examples") {
  auto G = sl(2, 7);
  CHECK(G->is_member(G->identity()));
  CHECK(G->is_member(mat(*G, {2, 0, 0, 4})));
  CHECK_FALSE(G->is_member(mat(*G, {2, 0, 0, 3})));
  for (auto H : {sl(3, 5), GroupCtx::sp4(FieldCtx::make(5, 1)), GroupCtx::su3(FieldCtx::make(3, 2))}) {
    CHECK(H->is_member(H->identity()));
  }
  try {
    G->from_entries(std::vector<std::uint64_t>{1, 0, 0});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
}

TEST_CASE("group axioms") {
  auto C = GroupCtx::cyclic(6);
  GroupElem x, y;
  x.e[0].v = 4;
  y.e[0].v = 5;
  CHECK(C->mul(x, y).e[0].v == 3);

  std::vector<GroupPtr> groups{sl(2, 7), sl(3, 3), sl(4, 2), sl(2, 3, 2), GroupCtx::sp4(FieldCtx::make(3, 1)),
                               GroupCtx::su3(FieldCtx::make(2, 2)), GroupCtx::su3(FieldCtx::make(3, 2)),
                               GroupCtx::su3(FieldCtx::make(5, 2))};
  for (const auto& G : groups) {
    Rng rng = stream(11, G->order_u64() % 1000);
    CHECK(G->inv(G->identity()) == G->identity());
    for (int t = 0; t < 1000; ++t) {
      const GroupElem g = G->random(rng), h = G->random(rng), k = G->random(rng);
      REQUIRE(G->is_member(g));
      REQUIRE(G->mul(G->mul(g, h), k) == G->mul(g, G->mul(h, k)));
      REQUIRE(G->mul(g, G->inv(g)) == G->identity());
      REQUIRE(G->is_member(G->mul(g, h)));
    }
  }
}

TEST_CASE("determinant preserved exhaustively on SL_2(F_3)") {
  auto G = sl(2, 3);
  for (std::uint64_t i = 0; i < 24; ++i)
    for (std::uint64_t j = 0; j < 24; ++j) REQUIRE(G->det(G->mul(G->element_at(i), G->element_at(j))) == G->field().one());
}

TEST_CASE("characteristic polynomial") {
  auto G = sl(2, 7);
  const auto& F = G->field();
  auto id = G->char_poly(G->identity());
  CHECK(id[0] == F.from_int(-2));
  CHECK(id[1] == F.one());
  auto d = G->char_poly(mat(*G, {2, 0, 0, 4}));
  CHECK(d[0].v == 1);
  CHECK(d[1].v == 1);
  for (auto H : {sl(3, 5), sl(4, 3), GroupCtx::sp4(FieldCtx::make(3, 1)), GroupCtx::su3(FieldCtx::make(3, 2))}) {
    Rng rng = stream(3, H->dim());
    const auto& K = H->field();
    const FieldElem cm = H->dim() % 2 ? K.neg(K.one()) : K.one();
    for (int t = 0; t < 1000; ++t) {
      const GroupElem g = H->random(rng), h = H->random(rng);
      const auto c = H->char_poly(g);
      REQUIRE(c.back() == cm);
      REQUIRE(H->char_poly(H->mul(H->mul(h, g), H->inv(h))) == c);
    }
  }
}

TEST_CASE("unipotent test") {
  auto G5 = sl(2, 5);
  CHECK(G5->is_unipotent(G5->identity()));
  CHECK(G5->is_unipotent(mat(*G5, {1, 1, 0, 1})));
  auto G7 = sl(2, 7);
  CHECK_FALSE(G7->is_unipotent(mat(*G7, {2, 0, 0, 4})));
}

TEST_CASE("canonical index") {
  auto G = sl(2, 5);
  for (std::uint64_t i = 0; i < 120; ++i) REQUIRE(G->index_of(G->element_at(i)) == i);
  // Frozen: the closed form puts the identity first.
  CHECK(G->index_of(G->identity()) == 0);
  auto G3 = sl(2, 3);
  for (std::uint64_t i = 0; i < 24; ++i) {
    const GroupElem g = G3->element_at(i);
    const auto j = G3->index_of(G3->inv(g));
    CHECK(j < 24);
    CHECK((j == i) == (G3->mul(g, g) == G3->identity()));
  }
  for (auto H : {sl(3, 3), GroupCtx::sp4(FieldCtx::make(3, 1)), GroupCtx::su3(FieldCtx::make(3, 2))}) {
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < H->order_u64(); ++i) bad += H->index_of(H->element_at(i)) != i;
    CHECK(bad == 0);
  }
  auto big = sl(3, 31);
  try {
    big->index_of(big->identity());
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::group_too_large);
  }
}

TEST_CASE("uniform sampling passes a chi-square test on SL_2(F_3)") {
  auto G = sl(2, 3);
  std::vector<double> counts(24, 0);
  Rng rng = stream(2024, 0);
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) counts[G->index_of(G->random(rng))] += 1;
  double chi2 = 0;
  const double e = draws / 24.0;
  for (double c : counts) chi2 += (c - e) * (c - e) / e;
  // 0.999 quantile of chi-square with 23 degrees of freedom.
  CHECK(chi2 < 49.728);
  Rng r1 = stream(1, 0), r2 = stream(2, 0);
  CHECK(G->random(r1) != G->random(r2));
}

TEST_CASE("Sp_4 and SU_3 samplers are uniform on small groups") {
  for (auto G : {GroupCtx::sp4(FieldCtx::make(2, 1)), GroupCtx::su3(FieldCtx::make(2, 2))}) {
    const auto n = G->order_u64();
    std::vector<double> counts(n, 0);
    Rng rng = stream(99, n);
    const double draws = 200.0 * n;
    for (int t = 0; t < draws; ++t) counts[G->index_of(G->random(rng))] += 1;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - 200) * (c - 200) / 200;
    // Normal approximation to the 0.999 quantile for large df.
    const double df = n - 1.0;
    CHECK(chi2 < df + 3.1 * std::sqrt(2 * df));
  }
}
