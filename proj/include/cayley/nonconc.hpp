#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayley/group.hpp"

namespace cayley::nonconc {

enum class TrapFamily { Subfield, StructuralSL2, XNCert, ProductDiagonal };

const char* family_name(TrapFamily f);

struct TrapReport {
  TrapFamily family = TrapFamily::Subfield;
  /// Subfield index j (subfield of size p^{k/j}); 0 for other families.
  unsigned subfield_index = 0;
  unsigned n = 0;
  std::uint64_t samples = 0;
  /// Words (or word pairs) landing in the trap.
  std::uint64_t trapped = 0;
  double trapped_fraction = 0;
  double std_error = 0;
  /// Subfield family only: trapped words split into non-unipotent hits and
  /// unipotent (degenerate) hits, as fractions of all samples.
  double subfield_fraction = 0;
  double degenerate_fraction = 0;
  /// Structural family only: sampled pairs rejected because the words
  /// commute in the free group.
  std::uint64_t discarded = 0;
  double gamma = 0;
  double threshold = 1;
  bool pass = true;
};

/// 2 floor(c0 ln|G|).
unsigned default_word_length(const GroupCtx& ctx, double c0 = 2.0);

/// Fraction of uniform words w of length n whose characteristic polynomial
/// coefficients at w(a, b) all lie in the subfield of index j. Throws
/// NoProperSubfield if k = 1 and BadDivisor unless j > 1 divides k.
TrapReport trap_subfield(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b, unsigned n,
                         std::uint64_t samples, unsigned j, std::uint64_t seed);

/// SL_2 only. Word pairs commuting in F_2 are resampled; a pair is trapped
/// when tr([w(a,b), w'(a,b)]) = 2, i.e. the two evaluations share an
/// eigenvector.
TrapReport trap_structural_sl2(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b, unsigned n,
                               std::uint64_t samples, std::uint64_t seed);

/// SL_2 only. Trapped when tr(w(a1, b1)) = tr(w(a2, b2)).
TrapReport product_diag_trap(const GroupCtx& ctx, const GroupElem& a1, const GroupElem& b1, const GroupElem& a2,
                             const GroupElem& b2, unsigned n, std::uint64_t samples, std::uint64_t seed);

struct XnResult {
  bool proper_trap = false;
  /// dim span rho(<x, y>) and dim span rho(G).
  std::size_t span_dim = 0;
  std::size_t full_dim = 0;
  /// Smallest n with span rho(B_{n+1}) = span rho(B_n).
  unsigned stabilized_at = 0;
  /// dim V = C(4 + D, D).
  std::size_t module_dim = 0;
};

/// Left-translation module V of polynomials of degree <= D in the four
/// matrix entries, (rho(g)P)(M) = P(g^{-1} M). Compares the span of the
/// ball images with the span of rho(G), the latter computed exactly as the
/// algebra generated by the elementary matrices x(t), y(t) over an F_p-basis
/// of F_q. SL_2 only; throws DegreeTooLarge for D > 3.
XnResult xn_certificate(const GroupCtx& ctx, const GroupElem& x, const GroupElem& y, unsigned D);

/// rho(g) as a dim V x dim V matrix (row-major, column = image of a basis
/// monomial), exposed for tests.
std::vector<FieldElem> xn_rho(const GroupCtx& ctx, const GroupElem& g, unsigned D);

struct VerdictOptions {
  double gamma = 0.05;
  double c0 = 2.0;
  std::uint64_t samples = 10000;
  /// xn_certificate degree; the certificate runs for SL_2 with q <= 64.
  unsigned xn_degree = 2;
  std::uint64_t seed = 0;
};

/// Runs every applicable family at n = 2 floor(c0 ln|G|) and compares each
/// trapped fraction with |G|^{-gamma}.
std::vector<TrapReport> nonconc_verdict(const GroupCtx& ctx, const GroupElem& a, const GroupElem& b,
                                        const VerdictOptions& opt);

}  // namespace cayley::nonconc
