#include <doctest.h>

#include <cmath>

#include "cayley/error.hpp"
#include "cayley/walk.hpp"
#include "cayley/words.hpp"
#include "oracles.hpp"

using namespace cayley;
using namespace cayley::walk;

namespace {

GroupElem residue(std::uint64_t r) {
  GroupElem g;
  g.e[0].v = r;
  return g;
}

std::vector<GroupElem> random_pair(const GroupCtx& G, std::uint64_t seed) {
  Rng rng = stream(seed, 0);
  return {G.random(rng), G.random(rng)};
}

}  // namespace

TEST_CASE("generator measures") {
  auto G = GroupCtx::sl(2, FieldCtx::make(7, 1));
  const auto gens = random_pair(*G, 1);
  const Measure mu = generator_measure(G, gens);
  CHECK(mu.support_size() == 4);
  mu.for_each([&](std::uint64_t i, double p) {
    CHECK(p == doctest::Approx(0.25));
    CHECK(mu.prob(G->index_of(G->inv(G->element_at(i)))) == p);
  });

  auto C = GroupCtx::cyclic(6);
  const std::vector<GroupElem> inv{residue(3)};
  const Measure d = generator_measure(C, inv);
  CHECK(d.support_size() == 1);
  CHECK(d.prob(3) == 1.0);
  CHECK_THROWS_AS(generator_measure(C, std::vector<GroupElem>{}), Error);
}

TEST_CASE("convolution identities") {
  auto C4 = GroupCtx::cyclic(4);
  const Measure d1 = Measure::delta(C4, 1);
  CHECK(convolve(d1, d1).prob(2) == 1.0);

  auto G = GroupCtx::sl(2, FieldCtx::make(5, 1));
  const Measure mu = generator_measure(G, random_pair(*G, 3));
  const Measure e = Measure::delta(G, G->index_of(G->identity()));
  const Measure mu3 = power(mu, 3);
  const Measure unit = convolve(mu3, e);
  for (std::uint64_t i = 0; i < G->order_u64(); ++i) CHECK(unit.prob(i) == doctest::Approx(mu3.prob(i)).epsilon(1e-14));
  const Measure u = convolve(Measure::uniform(G), mu3);
  for (std::uint64_t i = 0; i < G->order_u64(); ++i) CHECK(u.value(i) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(convolve(mu3, mu3).total() - 1) <= 1e-12);

  const Measure p0 = power(mu, 0);
  CHECK(p0.support_size() == 1);
  CHECK(p0.prob(G->index_of(G->identity())) == 1.0);
  CHECK_THROWS_AS(Measure::from_entries(G, {{0, 0.5}}), Error);
}

TEST_CASE("norms in the normalized convention") {
  auto G = GroupCtx::sl(2, FieldCtx::make(3, 1));
  const Measure u = Measure::uniform(G);
  CHECK(l1_norm(u) == doctest::Approx(1.0));
  CHECK(l2_norm(u) == doctest::Approx(1.0));
  CHECK(linf_norm(u) == doctest::Approx(1.0));
  CHECK(dist_to_uniform_inf(u) == doctest::Approx(0.0));
  const Measure d = Measure::delta(G, 5);
  CHECK(l2_norm(d) == doctest::Approx(std::sqrt(24.0)));
  CHECK(linf_norm(d) == doctest::Approx(24.0));
  CHECK(dist_to_uniform_inf(d) == doctest::Approx(23.0));
  CHECK(dist_to_uniform_l2(d) == doctest::Approx(std::sqrt(23.0)));
}

TEST_CASE("mass, symmetry and L2 monotonicity along walks") {
  auto G = GroupCtx::sl(2, FieldCtx::make(7, 1));
  const Measure mu = generator_measure(G, random_pair(*G, 5));
  const StepOperator T(mu);
  Measure nu = Measure::delta(G, G->index_of(G->identity()));
  for (int n = 1; n <= 60; ++n) {
    nu = T.step(nu);
    REQUIRE(std::fabs(nu.total() - 1) <= 1e-12);
    for (std::uint64_t i = 0; i < G->order_u64(); ++i)
      REQUIRE(std::fabs(nu.prob(i) - nu.prob(G->index_of(G->inv(G->element_at(i))))) <= 1e-15);
  }
  CHECK(nu.is_dense());

  auto H = GroupCtx::sl(2, FieldCtx::make(31, 1));
  const Measure m31 = generator_measure(H, random_pair(*H, 6));
  const StepOperator T31(m31);
  Measure w = Measure::delta(H, 0);
  double prev = l2_norm(w);
  for (int n = 1; n <= 200; ++n) {
    w = T31.step(w);
    const double cur = l2_norm(w);
    REQUIRE(cur <= prev * (1 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("walks on cycles follow the Fourier formula") {
  for (unsigned n : {2u, 3u, 5u, 8u, 13u, 64u}) {
    auto C = GroupCtx::cyclic(n);
    const Measure mu = generator_measure(C, std::vector<GroupElem>{residue(1)});
    Measure nu = Measure::delta(C, 0);
    const StepOperator T(mu);
    for (unsigned m = 1; m <= 40; ++m) {
      nu = T.step(nu);
      for (unsigned j = 0; j < n; ++j) REQUIRE(std::fabs(nu.prob(j) - oracle::cycle_walk(n, m, j)) <= 1e-9);
    }
    const Measure direct = power(mu, 40);
    for (unsigned j = 0; j < n; ++j) CHECK(std::fabs(direct.prob(j) - oracle::cycle_walk(n, 40, j)) <= 1e-9);
  }
}

TEST_CASE("Cyclic(2) alternates and never mixes") {
  auto C = GroupCtx::cyclic(2);
  const Measure mu = generator_measure(C, std::vector<GroupElem>{residue(1)});
  for (unsigned n = 0; n < 20; ++n) {
    const Measure p = power(mu, n);
    CHECK(p.prob(n % 2) == 1.0);
    CHECK(dist_to_uniform_inf(p) >= 1.0);
  }
}

TEST_CASE("exact rational powers agree with floating point") {
  auto G = GroupCtx::sl(2, FieldCtx::make(5, 1));
  const auto gens = random_pair(*G, 7);
  const auto exact = exact_power(G, gens, 9);
  const Measure mu = power(generator_measure(G, gens), 9);
  mpq_class sum = 0;
  for (std::uint64_t i = 0; i < G->order_u64(); ++i) {
    sum += exact[i];
    CHECK(std::fabs(exact[i].get_d() - mu.prob(i)) <= 1e-14);
  }
  CHECK(sum == 1);
}

TEST_CASE("subgroup mass") {
  auto G = GroupCtx::sl(2, FieldCtx::make(101, 1));
  const Measure e = Measure::delta(G, G->index_of(G->identity()));
  CHECK(subgroup_mass(e, [&](const GroupElem& g) { return g == G->identity(); }) == 1.0);
  const Measure mu = generator_measure(G, random_pair(*G, 8));
  CHECK(subgroup_mass(mu, [](const GroupElem&) { return true; }) == doctest::Approx(1.0));
  const Measure mu2 = power(mu, 2);
  const double back = subgroup_mass(mu2, [&](const GroupElem& g) { return g == G->identity(); });
  CHECK(back == doctest::Approx(words::return_probability(2).get_d()).epsilon(1e-12));
}

TEST_CASE("phase trace") {
  auto G = GroupCtx::sl(2, FieldCtx::make(13, 1));
  PhaseOptions opt;
  opt.kappa = 0.5;
  opt.n_max = 2000;
  const PhaseReport r = phase_trace(G, random_pair(*G, 9), opt);
  CHECK(r.l2_monotone);
  REQUIRE(r.n1);
  REQUIRE(r.n2);
  REQUIRE(r.n3_inv);
  CHECK(*r.n1 <= *r.n2);
  CHECK(*r.n2 <= *r.n3_inv);
  CHECK(r.surrogate_inv == doctest::Approx(1.0 / 2184));
  CHECK(r.threshold3 >= 1e-14);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(r.trajectory[i].l2 <= r.trajectory[i - 1].l2 * (1 + 1e-12));

  // The identity generator never moves the walk.
  const PhaseReport still = phase_trace(G, std::vector<GroupElem>{G->identity()}, PhaseOptions{0.5, 50, true, false});
  CHECK_FALSE(still.n1);
  CHECK_FALSE(still.n3_inv);
  for (const auto& row : still.trajectory) CHECK(row.l2 == doctest::Approx(std::sqrt(2184.0)));

  PhaseOptions bad;
  bad.kappa = 1.5;
  CHECK_THROWS_AS(phase_trace(G, random_pair(*G, 9), bad), Error);
}

TEST_CASE("Cyclic(1000) does not reach the surrogate within 10^4 steps") {
  auto C = GroupCtx::cyclic(1000);
  const PhaseReport r = phase_trace(C, std::vector<GroupElem>{residue(1)}, PhaseOptions{0.5, 10000, true, false});
  CHECK_FALSE(r.n3_inv);
  // The Fourier formula agrees: mass at 0 after 10^4 steps is far from uniform.
  CHECK(std::fabs(1000 * oracle::cycle_walk(1000, 10000, 0) - 1) > 1e-3);
}
