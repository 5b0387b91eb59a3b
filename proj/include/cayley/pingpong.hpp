#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayley/words.hpp"

namespace cayley::pingpong {

using Q = mpq_class;

struct Point {
  Q x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// p -> linear * p + translation, with det(linear) = 1.
struct AffineMap {
  std::array<std::array<Q, 2>, 2> linear{{{Q(1), Q(0)}, {Q(0), Q(1)}}};
  Point translation{Q(0), Q(0)};

  /// Throws InvalidArgument unless det(linear) = 1.
  static AffineMap make(const Q& l00, const Q& l01, const Q& l10, const Q& l11, const Q& cx, const Q& cy);
  static AffineMap identity() { return {}; }

  Point apply(const Point& p) const;
  /// (this o g)(p) = this(g(p)).
  AffineMap compose(const AffineMap& g) const;
  AffineMap inverse() const;
  bool is_identity() const;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// max(|x|, |y|).
Q norm(const Point& p);

/// Fixed point (1 - linear)^{-1} translation, or nullopt when 1 is an
/// eigenvalue of the linear part.
std::optional<Point> fixed_point(const AffineMap& g);

/// Regions named by their defining inequalities; the B variants are images
/// of the A variants under h.
///   AMinus:    ||p|| < 1/L or |x| > L|y|
///   AInvMinus: ||p|| < 1/L or |y| > L|x|
///   APlus:     |y| > max(L|x|, L)
///   AInvPlus:  |x| > max(L|y|, L)
enum class RegionKind { AMinus, AInvMinus, APlus, AInvPlus, BMinus, BInvMinus, BPlus, BInvPlus };

const char* region_name(RegionKind k);

struct Pair {
  Q L;
  AffineMap h, h_inv;
  AffineMap a, b;
  /// Indexed by words::Letter: a, b, a^{-1}, b^{-1}.
  std::array<AffineMap, 4> letters;
};

/// a(x, y) = (L^10 x, L^-10 y), b = h a h^{-1}. Throws InvalidArgument for
/// L <= 1 and NonGenericConjugator when h(0) = 0, an h-image of an axis
/// passes through 0, or an h-image of an axis is parallel to an axis.
Pair build_pair(const Q& L, const AffineMap& h);

/// L = 100, h(p) = R p + (1, 0) with R = [[3/5, -4/5], [4/5, 3/5]].
AffineMap pinned_h();
Pair pinned_pair();

bool region_member(const Pair& pair, const Point& p, RegionKind r);

/// The map a = diag(L^10, L^-10) expands along the x-axis, so the letter a
/// pushes points into AInvPlus and repels from AInvMinus; a^{-1} uses the
/// other pair. b and b^{-1} use the h-images correspondingly.
RegionKind repelling(words::Letter u);
RegionKind attracting(words::Letter u);

struct InclusionReport {
  std::uint64_t checks = 0;
  bool ok = true;
  /// First counterexample, if any.
  std::optional<Point> point;
  std::string letter;
  std::string failed;  // "image", "dilation" or "containment"
};

/// For each letter u and sampled p outside repelling(u): u p lies in
/// attracting(u) and ||u p|| > ||p||. Also checks attracting(u) inside
/// repelling(u^{-1}) on the samples.
InclusionReport verify_inclusions(const Pair& pair, const std::vector<Point>& samples);
/// Grid over powers of L, their h-images, and points straddling region
/// boundaries.
std::vector<Point> default_samples(const Pair& pair);

struct FreenessReport {
  unsigned max_len = 0;
  std::uint64_t words_checked = 0;
  bool all_nontrivial = true;
  /// Words that failed to land in attracting(first letter); informational.
  std::uint64_t region_misses = 0;
  std::optional<std::string> counterexample;
};

/// Every reduced word of length 1..max_len moves the base point and is not
/// the identity map. Throws InvalidArgument for max_len > 12.
FreenessReport freeness_certificate(const Pair& pair, unsigned max_len, const Point& base = {Q(1), Q(1)});

AffineMap evaluate(const Pair& pair, const words::Word& w);

struct LocalCommutativityReport {
  std::uint64_t triples_checked = 0;
  std::uint64_t triples_rejected = 0;  // equal last letters
  std::uint64_t common_fixed_point_failures = 0;
  std::uint64_t containment_checked = 0;
  std::uint64_t containment_failures = 0;
  bool ok() const { return common_fixed_point_failures == 0 && containment_failures == 0; }
};

/// Samples reduced words of length word_len in triples with pairwise
/// distinct last letters; checks that the three (unique) fixed points are
/// not all equal and that each lies in repelling(last letter). Throws
/// InvalidArgument for word_len > 10 or 0.
LocalCommutativityReport locally_commutative_check(const Pair& pair, unsigned word_len, std::uint64_t trials,
                                                   std::uint64_t seed);

/// Decides the three-word condition for one triple; returns false when the
/// last letters are not pairwise distinct.
bool distinct_last_letters(const words::Word& w1, const words::Word& w2, const words::Word& w3);

}  // namespace cayley::pingpong
