#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/rng.hpp"

namespace cayley::words {

// Letter codes are chosen so that inverse(l) == l ^ 2.
enum class Letter : std::uint8_t { A = 0, B = 1, Ainv = 2, Binv = 3 };

inline Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 2u); }

/// Formal word, stored unreduced.
using Word = std::vector<Letter>;

/// Uniform over all 4^n words.
Word sample_word(std::size_t n, Rng& rng);
/// Uniform over the 4 * 3^(n-1) reduced words of length n.
Word sample_reduced_word(std::size_t n, Rng& rng);

Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

/// "a", "b" for the generators, "A", "B" for their inverses.
std::string to_string(const Word& w);
/// Throws InvalidArgument on any other character.
Word parse(std::string_view s);

/// Substitution homomorphism A -> a, B -> b.
GroupElem evaluate(const GroupCtx& ctx, const Word& w, const GroupElem& a, const GroupElem& b);

/// Number of length-n words that reduce to the empty word: walk counting on
/// the 4-regular tree by distance from the root. Exact for every n.
mpz_class return_count(unsigned n);
/// return_count(n) / 4^n.
mpq_class return_probability(unsigned n);
/// C(n, n/2) * 3^(n/2) for even n, 0 for odd n.
mpz_class return_count_bound(unsigned n);

struct Estimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
};

/// Monte Carlo estimate of return_probability(n).
Estimate return_probability_mc(unsigned n, std::uint64_t trials, std::uint64_t seed);

/// Probability that two independent uniform words of length n commute in F_2,
/// decided by reduce(w w' w^-1 w'^-1) being empty.
Estimate commuting_pair_probability(unsigned n, std::uint64_t trials, std::uint64_t seed);

/// True iff w and w' commute in the free group.
bool commute_in_free_group(const Word& w, const Word& w2);

/// Trials are split into fixed chunks of this size; chunk c draws from
/// stream(seed, c), so results do not depend on the thread count.
inline constexpr std::uint64_t kTrialChunk = 4096;

}  // namespace cayley::words
