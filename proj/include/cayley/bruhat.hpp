#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

#include "cayley/group.hpp"

namespace cayley::bruhat {

/// Weyl element of SL_m as a permutation: perm[j] = pi(j), meaning the
/// representative n_w sends e_j to +-e_{pi(j)}.
using Perm = std::vector<unsigned>;

/// Coordinates of g = u1 * h * n_w * u2.
///
/// u1: strictly-upper entries of a unitriangular matrix, row-major.
/// t:  first m-1 torus entries; the last is 1/prod(t).
/// u2: entries (i,j), i<j, pi(i) > pi(j), row-major; d_w of them.
struct BruhatCoords {
  Perm perm;
  std::vector<FieldElem> u1;
  std::vector<FieldElem> t;
  std::vector<FieldElem> u2;

  friend bool operator==(const BruhatCoords&, const BruhatCoords&) = default;
};

/// All m! permutations in lexicographic order (identity first, w0 last).
std::vector<Perm> weyl_elements(unsigned m);
Perm longest_element(unsigned m);
/// d_w = #{(i,j) : i < j, pi(i) > pi(j)}.
unsigned inversions(const Perm& perm);

/// Signed permutation matrix n_w in SL_m: the product of Chevalley lifts
/// [[0,-1],[1,0]] of simple reflections along the reduced word found by
/// repeatedly peeling the smallest descent.
GroupElem weyl_rep(const GroupCtx& ctx, const Perm& perm);

/// Throws ZeroTorusParam, DimensionMismatch, Unsupported (non-SL ctx).
GroupElem compose(const GroupCtx& ctx, const BruhatCoords& coords);
/// Inverse of compose; the permutation comes from the pivot pattern of
/// bottom-up row elimination.
BruhatCoords decompose(const GroupCtx& ctx, const GroupElem& g);

/// q^{|Phi+|} (q-1)^{m-1} q^{d_w}.
mpz_class cell_size(const GroupCtx& ctx, const Perm& perm);
GroupElem sample_cell(const GroupCtx& ctx, const Perm& perm, Rng& rng);
/// Exactly uniform on SL_m(F_q): cell chosen with probability |cell|/|G|.
GroupElem sample_sl(const GroupCtx& ctx, Rng& rng);
/// Calls fn on every element of the cell, in coordinate odometer order.
void for_each_in_cell(const GroupCtx& ctx, const Perm& perm, const std::function<void(const GroupElem&)>& fn);

// ---- SU_3 (twisted, d = 2) ----

/// Element of the root subgroup U^1 in the anti-diagonal model:
/// [[1, t, u], [0, 1, -t^sigma], [0, 0, 1]] with u + u^sigma = -N t t^sigma,
/// N = 1 for this basis.
struct Su3Unipotent {
  FieldElem t, u;
};

/// Chart (a, b, c) in F_qt^3 -> (t, u), solving the norm-trace constraint:
///   odd p:  t = a + i b,      u = -(a^2 - i^2 b^2)/2 + i c
///   p = 2:  t = a + w b,      u = w (a^2 + a b + w w^sigma b^2) + c
/// with i^sigma = -i and w + w^sigma = 1.
Su3Unipotent su3_chart(const GroupCtx& ctx, FieldElem a, FieldElem b, FieldElem c);

/// Big cell U^1 T^1 n_w0 U^1, mapped to the identity-form group.
GroupElem su3_big_cell(const GroupCtx& ctx, const Su3Unipotent& x, FieldElem lambda, const Su3Unipotent& y);
/// Small cell U^1 T^1 (the Borel), mapped to the identity-form group.
GroupElem su3_borel(const GroupCtx& ctx, const Su3Unipotent& x, FieldElem lambda);

struct Su3Sample {
  GroupElem g;
  /// Always false: the small cell is sampled exactly, so no bias remains.
  bool biased = false;
};

/// Uniform on the big cell U^1 T^1 n_w0 U^1.
Su3Sample su3_sample(const GroupCtx& ctx, Rng& rng);
/// Exactly uniform on SU_3: big cell with probability qt^3/(qt^3 + 1), else
/// the Borel U^1 T^1.
GroupElem su3_uniform(const GroupCtx& ctx, Rng& rng);
mpz_class su3_big_cell_size(std::uint64_t qt);
void su3_for_each(const GroupCtx& ctx, const std::function<void(const GroupElem&)>& fn);

}  // namespace cayley::bruhat
