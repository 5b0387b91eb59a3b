#include "cayley/words.hpp"

#include <cmath>

#include "cayley/error.hpp"
#include "cayley/parallel.hpp"

namespace cayley::words {

Word sample_word(std::size_t n, Rng& rng) {
  Word w(n);
  std::uint64_t bits = 0;
  unsigned left = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (left == 0) {
      bits = rng();
      left = 32;
    }
    w[i] = static_cast<Letter>(bits & 3u);
    bits >>= 2;
    --left;
  }
  return w;
}

Word sample_reduced_word(std::size_t n, Rng& rng) {
  Word w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w.empty()) {
      w.push_back(static_cast<Letter>(uniform_below(rng, 4)));
    } else {
      // Skip the inverse of the previous letter.
      const auto forbidden = static_cast<std::uint8_t>(inverse(w.back()));
      auto l = static_cast<std::uint8_t>(uniform_below(rng, 3));
      if (l >= forbidden) ++l;
      w.push_back(static_cast<Letter>(l));
    }
  }
  return w;
}

Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = inverse(l);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Word& w) {
  static constexpr char kChars[4] = {'a', 'b', 'A', 'B'};
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(kChars[static_cast<int>(l)]);
  return s;
}

Word parse(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'a': w.push_back(Letter::A); break;
      case 'b': w.push_back(Letter::B); break;
      case 'A': w.push_back(Letter::Ainv); break;
      case 'B': w.push_back(Letter::Binv); break;
      default: fail(Errc::invalid_argument, std::string("invalid word letter '") + c + "'");
    }
  }
  return w;
}

GroupElem evaluate(const GroupCtx& ctx, const Word& w, const GroupElem& a, const GroupElem& b) {
  const GroupElem table[4] = {a, b, ctx.inv(a), ctx.inv(b)};
  GroupElem g = ctx.identity();
  for (Letter l : w) g = ctx.mul(g, table[static_cast<int>(l)]);
  return g;
}

mpz_class return_count(unsigned n) {
  // ways[d] = number of walks currently at distance d from the root.
  std::vector<mpz_class> ways(n + 2, 0);
  ways[0] = 1;
  for (unsigned step = 0; step < n; ++step) {
    std::vector<mpz_class> next(n + 2, 0);
    next[1] += ways[0] * 4;
    for (unsigned d = 1; d <= step; ++d) {
      if (ways[d] == 0) continue;
      next[d - 1] += ways[d];
      next[d + 1] += ways[d] * 3;
    }
    ways.swap(next);
  }
  return ways[0];
}

mpq_class return_probability(unsigned n) {
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 4, n);
  mpq_class r(return_count(n), denom);
  r.canonicalize();
  return r;
}

mpz_class return_count_bound(unsigned n) {
  if (n % 2 != 0) return 0;
  mpz_class binom, pow3;
  mpz_bin_uiui(binom.get_mpz_t(), n, n / 2);
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, n / 2);
  return binom * pow3;
}

bool commute_in_free_group(const Word& w, const Word& w2) {
  const Word c = concat(concat(w, w2), concat(inverse(w), inverse(w2)));
  return reduce(c).empty();
}

namespace {

template <class Trial>
Estimate run_chunks(std::uint64_t trials, std::uint64_t seed, Trial trial) {
  const std::uint64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_tasks(chunks, [&](std::size_t c) {
    Rng rng = stream(seed, c);
    const std::uint64_t begin = c * kTrialChunk;
    const std::uint64_t end = std::min(trials, begin + kTrialChunk);
    std::uint64_t h = 0;
    for (std::uint64_t t = begin; t < end; ++t) h += trial(rng) ? 1 : 0;
    hits[c] = h;
  });
  Estimate e;
  e.trials = trials;
  for (auto h : hits) e.hits += h;
  if (trials > 0) {
    e.value = static_cast<double>(e.hits) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.value * (1 - e.value) / static_cast<double>(trials));
  }
  return e;
}

}  // namespace

Estimate return_probability_mc(unsigned n, std::uint64_t trials, std::uint64_t seed) {
  return run_chunks(trials, seed, [n](Rng& rng) { return reduce(sample_word(n, rng)).empty(); });
}

Estimate commuting_pair_probability(unsigned n, std::uint64_t trials, std::uint64_t seed) {
  if (n == 0) fail(Errc::invalid_argument, "word length must be positive");
  return run_chunks(trials, seed, [n](Rng& rng) {
    const Word w = sample_word(n, rng);
    const Word w2 = sample_word(n, rng);
    return commute_in_free_group(w, w2);
  });
}

}  // namespace cayley::words
