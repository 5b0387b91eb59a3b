#include <doctest.h>

#include <set>

#include "cayley/bruhat.hpp"
#include "cayley/error.hpp"

using namespace cayley;
using namespace cayley::bruhat;

namespace {

GroupPtr sl(unsigned m, std::uint64_t p, unsigned k = 1) { return GroupCtx::sl(m, FieldCtx::make(p, k)); }

std::vector<std::uint64_t> key(const GroupCtx& G, const GroupElem& g) { return G.entries(g); }

}  // namespace

TEST_CASE("trivial coordinates") {
  auto G = sl(3, 5);
  BruhatCoords c{{0, 1, 2}, std::vector<FieldElem>(3), std::vector<FieldElem>(2, G->field().one()), {}};
  CHECK(compose(*G, c) == G->identity());
  CHECK(decompose(*G, G->identity()) == c);

  const Perm w0 = longest_element(3);
  const GroupElem n0 = weyl_rep(*G, w0);
  const BruhatCoords d = decompose(*G, n0);
  CHECK(d.perm == w0);
  for (auto x : d.u1) CHECK(x.v == 0);
  for (auto x : d.t) CHECK(x == G->field().one());
  CHECK(d.u2.size() == 3);
  for (auto x : d.u2) CHECK(x.v == 0);
  CHECK(G->det(n0) == G->field().one());

  c.t[0] = G->field().zero();
  try {
    compose(*G, c);
    FAIL("expected ZeroTorusParam");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_torus_param);
  }
}

TEST_CASE("Weyl group bookkeeping") {
  CHECK(weyl_elements(2).size() == 2);
  CHECK(weyl_elements(3).size() == 6);
  CHECK(weyl_elements(4).size() == 24);
  CHECK(weyl_elements(3).front() == Perm{0, 1, 2});
  CHECK(weyl_elements(3).back() == longest_element(3));
  CHECK(inversions(longest_element(4)) == 6);
  CHECK(inversions(Perm{1, 0, 2}) == 1);
}

TEST_CASE("round trips are exhaustive on small groups") {
  for (auto G : {sl(2, 3), sl(2, 5), sl(2, 2, 2), sl(3, 2), sl(3, 3)}) {
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < G->order_u64(); ++i) {
      const GroupElem g = G->element_at(i);
      const BruhatCoords c = decompose(*G, g);
      bad += compose(*G, c) != g;
      bad += c.u2.size() != inversions(c.perm);
      for (auto t : c.t) bad += t.v == 0;
      bad += !(decompose(*G, compose(*G, c)) == c);
    }
    CHECK_MESSAGE(bad == 0, G->name());
  }
}

TEST_CASE("cells enumerate SL_2(F_3) as 18 + 6 distinct elements") {
  auto G = sl(2, 3);
  std::set<std::vector<std::uint64_t>> all;
  std::vector<std::size_t> sizes;
  for (const auto& w : weyl_elements(2)) {
    std::set<std::vector<std::uint64_t>> cell;
    for_each_in_cell(*G, w, [&](const GroupElem& g) {
      CHECK(G->is_member(g));
      cell.insert(key(*G, g));
      all.insert(key(*G, g));
    });
    sizes.push_back(cell.size());
    CHECK(cell_size(*G, w) == cell.size());
  }
  CHECK(sizes == std::vector<std::size_t>{6, 18});
  CHECK(all.size() == 24);
}

TEST_CASE("cell-size identity") {
  std::vector<std::pair<unsigned, std::pair<std::uint64_t, unsigned>>> cases{
      {2, {2, 1}}, {2, {3, 1}}, {2, {2, 2}}, {2, {5, 1}}, {2, {7, 1}}, {3, {2, 1}}, {3, {3, 1}}, {4, {2, 1}}, {3, {5, 2}}};
  for (auto [m, pk] : cases) {
    auto G = sl(m, pk.first, pk.second);
    mpz_class total = 0;
    for (const auto& w : weyl_elements(m)) total += cell_size(*G, w);
    CHECK_MESSAGE(total == G->order(), G->name());
    const double q = static_cast<double>(G->field().q());
    const mpz_class big = cell_size(*G, longest_element(m));
    const double rest = 1.0 - mpq_class(big, G->order()).get_d();
    CHECK_MESSAGE(rest <= 2.0 / q, G->name());
  }
  CHECK(cell_size(*sl(2, 3), longest_element(2)) == 18);
  mpq_class frac(cell_size(*sl(2, 3), longest_element(2)), sl(2, 3)->order());
  frac.canonicalize();
  CHECK(frac == mpq_class(3, 4));
}

TEST_CASE("sample_cell lands in its cell and is uniform on the SL_2(F_3) big cell") {
  auto G = sl(2, 3);
  const Perm w0 = longest_element(2);
  std::vector<double> counts(24, 0);
  Rng rng = stream(5, 0);
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const GroupElem g = sample_cell(*G, w0, rng);
    counts[G->index_of(g)] += 1;
  }
  double chi2 = 0;
  std::size_t support = 0;
  const double e = draws / 18.0;
  for (std::uint64_t i = 0; i < 24; ++i) {
    const bool in_big = decompose(*G, G->element_at(i)).perm == w0;
    if (!in_big) {
      CHECK(counts[i] == 0);
      continue;
    }
    ++support;
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
  }
  CHECK(support == 18);
  // 0.999 quantile of chi-square with 17 degrees of freedom.
  CHECK(chi2 < 40.790);

  auto G3 = sl(3, 5);
  for (const auto& w : weyl_elements(3)) {
    for (int t = 0; t < 200; ++t) {
      const GroupElem g = sample_cell(*G3, w, rng);
      REQUIRE(G3->is_member(g));
      REQUIRE(decompose(*G3, g).perm == w);
    }
  }
}

TEST_CASE("SU_3 charts") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {5, 2}, {2, 4}}) {
    auto G = GroupCtx::su3(FieldCtx::make(p, k));
    Rng rng = stream(8, p * 10 + k);
    for (int t = 0; t < 500; ++t) {
      REQUIRE(G->is_member(su3_sample(*G, rng).g));
      REQUIRE(G->is_member(su3_uniform(*G, rng)));
    }
    mpz_class covered = 0;
    su3_for_each(*G, [&](const GroupElem&) { covered += 1; });
    CHECK(covered == G->order());
  }

  // qt = 2: the chart's parameter space hits |U^1|^2 |T^1| distinct elements.
  auto G = GroupCtx::su3(FieldCtx::make(2, 2));
  const auto& sub = G->su3().subfield;
  std::vector<Su3Unipotent> us;
  for (auto a : sub)
    for (auto b : sub)
      for (auto c : sub) us.push_back(su3_chart(*G, a, b, c));
  std::set<std::vector<std::uint64_t>> big;
  for (const auto& x : us)
    for (std::uint64_t lam = 1; lam < 4; ++lam)
      for (const auto& y : us) big.insert(G->entries(su3_big_cell(*G, x, {lam}, y)));
  CHECK(big.size() == 8 * 8 * 3);
  CHECK(su3_big_cell_size(2) == 192);
  CHECK(big.count(G->entries(G->identity())) == 0);

  std::set<std::vector<std::uint64_t>> support;
  Rng rng = stream(9, 0);
  for (int t = 0; t < 20000; ++t) support.insert(G->entries(su3_sample(*G, rng).g));
  CHECK(support.size() == 192);
  for (const auto& s : support) CHECK(big.count(s) == 1);

  try {
    GroupCtx::su3(FieldCtx::make(2, 3));
    FAIL("expected UnsupportedFieldDegree");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_field_degree);
  }
}

TEST_CASE("Bruhat calls on the wrong family are rejected") {
  auto S = GroupCtx::sp4(FieldCtx::make(3, 1));
  CHECK_THROWS_AS(decompose(*S, S->identity()), Error);
  auto G = sl(2, 5);
  Rng rng = stream(0, 0);
  CHECK_THROWS_AS(su3_sample(*G, rng), Error);
}
