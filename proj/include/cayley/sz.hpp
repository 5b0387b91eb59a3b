#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "cayley/group.hpp"

namespace cayley::sz {

struct Term {
  FieldElem coeff;
  std::vector<unsigned> exps;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_q. Terms are kept sorted by exponent vector,
/// merged, and free of zero coefficients.
class Poly {
 public:
  Poly() = default;
  /// Normalizes the term list. Throws DimensionMismatch when an exponent
  /// vector has the wrong length and InvalidArgument for out-of-range
  /// coefficients.
  Poly(const FieldCtx& f, unsigned nvars, std::vector<Term> terms);

  static Poly constant(const FieldCtx& f, unsigned nvars, FieldElem c);
  static Poly variable(const FieldCtx& f, unsigned nvars, unsigned i);

  unsigned nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  FieldElem eval(const FieldCtx& f, std::span<const FieldElem> x) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  unsigned nvars_ = 0;
  unsigned degree_ = 0;
  std::vector<Term> terms_;
};

Poly add(const FieldCtx& f, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& f, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& f, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& f, const Poly& a, FieldElem c);

/// Entry (i, j) of the `which`-th m x m matrix among the variables, i.e.
/// variable which*m*m + i*m + j.
Poly entry(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which, unsigned i, unsigned j);
/// Entry (i, j) of the product of matrix blocks `left` and `right`.
Poly product_entry(const FieldCtx& f, unsigned nvars, unsigned m, unsigned left, unsigned right, unsigned i,
                   unsigned j);
Poly det_poly(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which);
Poly trace_poly(const FieldCtx& f, unsigned nvars, unsigned m, unsigned which);

/// Random polynomial with `nterms` terms of total degree <= max_degree and
/// nonzero coefficients; at least one term attains max_degree.
Poly random_poly(const FieldCtx& f, unsigned nvars, unsigned max_degree, unsigned nterms, Rng& rng);

inline constexpr double kMaxAffinePoints = 1e8;
inline constexpr double kMaxGroupPoints = 1e7;
inline constexpr double kMaxPairPoints = 1e8;

struct AffineCount {
  std::uint64_t count = 0;
  std::uint64_t points = 0;
  /// d D q^{d-1}.
  mpz_class bound;
  /// P vanishes at every point of F_q^d; the bound is then not checked.
  bool identically_zero = false;
  bool bound_holds = true;
};

/// Exhaustive zero count of P on F_q^d, d = P.nvars(). Throws TooLarge for
/// q^d > 1e8.
AffineCount zero_count_affine(const Poly& p, const FieldCtx& f);

struct GroupCount {
  std::uint64_t count = 0;
  std::uint64_t order = 0;
  unsigned degree = 0;
  unsigned twist = 1;
  /// D q^{-1/d} |G|.
  double scale = 0;
  /// count / scale; the measured implied constant. Zero when scale is zero.
  double ratio = 0;
  bool identically_zero = false;
};

/// Zeros of P (in the m*m entries, row-major) on the group. Enumerates by
/// canonical index. Throws TooLarge for |G| > 1e7, DimensionMismatch when
/// P.nvars() != m*m, UnsupportedFamily for the cyclic family.
GroupCount zero_count_group(const Poly& p, const GroupCtx& ctx);
/// Same count, streaming the group cell by cell (SL_m and SU_3 only).
GroupCount zero_count_group_bruhat(const Poly& p, const GroupCtx& ctx);

struct PairCount {
  std::uint64_t count = 0;
  std::uint64_t order = 0;
  unsigned degree = 0;
  unsigned twist = 1;
  /// D q^{-1/d} |G|^2.
  double scale = 0;
  double ratio = 0;
  bool identically_zero = false;
  /// Slices b with P(., b) vanishing on all of G.
  std::uint64_t dead_slices = 0;
  /// max over the other b of #{a : P(a, b) = 0}.
  std::uint64_t max_live_slice = 0;
  /// dead_slices |G| + |G| max_live_slice, the slice-by-slice bound.
  std::uint64_t fubini_bound = 0;
  bool fubini_holds = true;
};

/// Zeros of P in 2 m^2 variables (entries of a, then of b) on G x G. Throws
/// TooLarge for |G|^2 > 1e8.
PairCount zero_count_pairs(const Poly& p, const GroupCtx& ctx);

}  // namespace cayley::sz
