#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cayley/group.hpp"

namespace cayley::combinat {

/// Sorted, deduplicated canonical indices.
using ElemSet = std::vector<std::uint64_t>;

inline constexpr std::size_t kMaxEnergySet = 4000;
inline constexpr double kMaxProducts = 2e8;

ElemSet make_set(std::vector<std::uint64_t> indices);

/// {a b : a in A, b in B}. Throws SetTooLarge above 2e8 products.
ElemSet product_set(const GroupCtx& ctx, const ElemSet& a, const ElemSet& b);

/// #{(a1, a2, a3, a4) in A^4 : a1 a2^{-1} = a3 a4^{-1}}. Throws SetTooLarge
/// for |A| > 4000 and EmptySet for A empty.
std::uint64_t multiplicative_energy(const GroupCtx& ctx, const ElemSet& a);

/// |AAA| / |A|.
double tripling(const GroupCtx& ctx, const ElemSet& a);

struct Cover {
  /// Number of translates; an upper bound on the minimal K.
  std::size_t k = 0;
  /// Left multipliers x with AA contained in the union of x A.
  std::vector<std::uint64_t> translates;
  /// Checked after construction: every element of AA is covered.
  bool valid = false;
};

/// Greedy cover of AA by left translates x A. Repeatedly takes the smallest
/// uncovered y and, among the |A| translates containing it (x = y a^{-1}),
/// the one covering the most uncovered points; ties go to the smallest x.
Cover approx_k(const GroupCtx& ctx, const ElemSet& a);

/// Subgroup generated by gens (closure under right multiplication).
ElemSet generated_subgroup(const GroupCtx& ctx, std::span<const GroupElem> gens);

/// Elements of word length <= radius in gens and their inverses.
ElemSet ball(const GroupCtx& ctx, std::span<const GroupElem> gens, unsigned radius);

}  // namespace cayley::combinat
