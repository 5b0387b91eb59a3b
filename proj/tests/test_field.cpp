#include <doctest.h>

#include "cayley/error.hpp"
#include "cayley/field.hpp"
#include "cayley/rng.hpp"
#include "oracles.hpp"

using namespace cayley;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

}  // namespace

TEST_CASE("construction and moduli") {
  auto f7 = FieldCtx::make(7, 1);
  CHECK(f7->q() == 7);
  auto f4 = FieldCtx::make(2, 2);
  const std::vector<std::uint64_t> x2x1{1, 1, 1};
  CHECK(std::vector<std::uint64_t>(f4->modulus().begin(), f4->modulus().end()) == x2x1);
  CHECK(code_of([] { FieldCtx::make(4, 1); }) == Errc::non_prime);
  CHECK(code_of([] { FieldCtx::make(2, 7); }) == Errc::too_large);
}

TEST_CASE("modulus is the lowest irreducible found by brute force") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}}) {
    const auto F = FieldCtx::make(p, k);
    const auto O = oracle::make_field(p, k);
    CHECK(std::vector<std::uint64_t>(F->modulus().begin(), F->modulus().end()) == O.mod);
    CHECK(oracle::irreducible_bruteforce(O.mod, p));
  }
}

TEST_CASE("arithmetic agrees with schoolbook polynomials, exhaustively for q <= 64") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 6}, {7, 2}, {5, 2}}) {
    const auto F = FieldCtx::make(p, k);
    const auto O = oracle::make_field(p, k);
    const auto q = F->q();
    std::size_t bad = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        bad += F->add({a}, {b}).v != O.add(a, b);
        bad += F->sub({a}, {b}).v != O.sub(a, b);
        bad += F->mul({a}, {b}).v != O.mul(a, b);
      }
      if (a != 0) bad += F->mul({a}, F->inv({a})).v != 1;
      bad += F->add({a}, F->neg({a})).v != 0;
    }
    CHECK_MESSAGE(bad == 0, "q = " << q);
  }
}

TEST_CASE("inverse and zero") {
  auto f7 = FieldCtx::make(7, 1);
  CHECK(f7->inv({3}).v == 5);
  CHECK(code_of([&] { f7->inv({0}); }) == Errc::division_by_zero);
  auto f9 = FieldCtx::make(3, 2);
  for (std::uint64_t x = 0; x < 9; ++x) CHECK(f9->mul({x}, f9->zero()).v == 0);
}

TEST_CASE("random inverses in a large field") {
  auto F = FieldCtx::make(3, 6);
  Rng rng = stream(1, 0);
  for (int i = 0; i < 10000; ++i) {
    FieldElem x{1 + uniform_below(rng, F->q() - 1)};
    REQUIRE(F->mul(x, F->inv(x)) == F->one());
  }
}

TEST_CASE("Frobenius is an automorphism of order k") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 3}, {2, 6}, {7, 2}}) {
    const auto F = FieldCtx::make(p, k);
    const auto O = oracle::make_field(p, k);
    for (std::uint64_t a = 0; a < F->q(); ++a) {
      CHECK(F->frobenius({a}, 1).v == O.pow(a, p));
      CHECK(F->frobenius({a}, k).v == a);
      CHECK(F->frobenius(F->frobenius({a}, 1), 1) == F->frobenius({a}, 2));
      for (std::uint64_t b = 0; b < F->q(); b += 3) {
        CHECK(F->frobenius(F->add({a}, {b}), 1) == F->add(F->frobenius({a}, 1), F->frobenius({b}, 1)));
        CHECK(F->frobenius(F->mul({a}, {b}), 1) == F->mul(F->frobenius({a}, 1), F->frobenius({b}, 1)));
      }
    }
  }
  auto f5 = FieldCtx::make(5, 1);
  for (std::uint64_t a = 0; a < 5; ++a) CHECK(f5->frobenius({a}, 1).v == a);
}

TEST_CASE("F_4: a generator x has x^2 != x and (x^2)^2 = x") {
  auto F = FieldCtx::make(2, 2);
  const FieldElem x{2};
  CHECK(F->frobenius(x, 1) != x);
  CHECK(F->frobenius(F->frobenius(x, 1), 1) == x);
}

TEST_CASE("subfield sizes are exact") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 2}, {2, 4}, {2, 6}, {5, 2}, {3, 4}, {3, 6}}) {
    const auto F = FieldCtx::make(p, k);
    for (unsigned j = 1; j <= k; ++j) {
      if (k % j) continue;
      std::uint64_t count = 0;
      for (auto x : F->enumerate()) count += F->subfield_member(x, j);
      std::uint64_t expect = 1;
      for (unsigned i = 0; i < k / j; ++i) expect *= p;
      CHECK_MESSAGE(count == expect, "p=" << p << " k=" << k << " j=" << j);
    }
  }
  auto f9 = FieldCtx::make(3, 2);
  CHECK(code_of([&] { f9->subfield_member({1}, 3); }) == Errc::bad_divisor);
  CHECK(f9->subfield_member({0}, 2));
  CHECK(f9->subfield_member({1}, 2));
  // A generator of F_9^x has order 8 and is not fixed by x -> x^3.
  for (std::uint64_t g = 1; g < 9; ++g) {
    if (f9->pow({g}, 4) == f9->one()) continue;
    CHECK_FALSE(f9->subfield_member({g}, 2));
  }
}

TEST_CASE("enumeration") {
  auto f2 = FieldCtx::make(2, 1);
  CHECK(f2->enumerate() == std::vector<FieldElem>{{0}, {1}});
  auto f5 = FieldCtx::make(5, 1);
  FieldElem s{0};
  for (auto x : f5->enumerate()) s = f5->add(s, x);
  CHECK(s.v == 0);
  CHECK(FieldCtx::make(2, 2)->enumerate().size() == 4);
  CHECK(code_of([] { FieldCtx::make(1048583, 1)->enumerate(); }) == Errc::too_large_to_enumerate);
}
