#include "cayley/pingpong.hpp"

#include "cayley/error.hpp"
#include "cayley/rng.hpp"

namespace cayley::pingpong {

using words::Letter;

AffineMap AffineMap::make(const Q& l00, const Q& l01, const Q& l10, const Q& l11, const Q& cx, const Q& cy) {
  if (l00 * l11 - l01 * l10 != 1) fail(Errc::invalid_argument, "linear part must have determinant 1");
  AffineMap g;
  g.linear = {{{l00, l01}, {l10, l11}}};
  g.translation = {cx, cy};
  return g;
}

Point AffineMap::apply(const Point& p) const {
  return {linear[0][0] * p.x + linear[0][1] * p.y + translation.x,
          linear[1][0] * p.x + linear[1][1] * p.y + translation.y};
}

AffineMap AffineMap::compose(const AffineMap& g) const {
  AffineMap r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.linear[i][j] = linear[i][0] * g.linear[0][j] + linear[i][1] * g.linear[1][j];
  }
  const Point c = apply(g.translation);
  r.translation = c;
  return r;
}

AffineMap AffineMap::inverse() const {
  AffineMap r;
  r.linear = {{{linear[1][1], -linear[0][1]}, {-linear[1][0], linear[0][0]}}};
  const Point c = r.apply(translation);  // translation part still zero here
  r.translation = {-c.x, -c.y};
  return r;
}

bool AffineMap::is_identity() const { return *this == AffineMap::identity(); }

Q norm(const Point& p) {
  const Q ax = abs(p.x), ay = abs(p.y);
  return ax > ay ? ax : ay;
}

std::optional<Point> fixed_point(const AffineMap& g) {
  // Solve (1 - l) x = c.
  const Q m00 = 1 - g.linear[0][0], m01 = -g.linear[0][1];
  const Q m10 = -g.linear[1][0], m11 = 1 - g.linear[1][1];
  const Q det = m00 * m11 - m01 * m10;
  if (det == 0) return std::nullopt;
  const Q& cx = g.translation.x;
  const Q& cy = g.translation.y;
  Point p{(m11 * cx - m01 * cy) / det, (m00 * cy - m10 * cx) / det};
  return p;
}

const char* region_name(RegionKind k) {
  switch (k) {
    case RegionKind::AMinus: return "U_a^-";
    case RegionKind::AInvMinus: return "U_{a^-1}^-";
    case RegionKind::APlus: return "U_a^+";
    case RegionKind::AInvPlus: return "U_{a^-1}^+";
    case RegionKind::BMinus: return "U_b^-";
    case RegionKind::BInvMinus: return "U_{b^-1}^-";
    case RegionKind::BPlus: return "U_b^+";
    case RegionKind::BInvPlus: return "U_{b^-1}^+";
  }
  return "?";
}

Pair build_pair(const Q& L, const AffineMap& h) {
  if (L <= 1) fail(Errc::invalid_argument, "L must exceed 1");
  if (h.linear[0][0] * h.linear[1][1] - h.linear[0][1] * h.linear[1][0] != 1) {
    fail(Errc::invalid_argument, "h must have determinant 1");
  }
  const Point& c = h.translation;
  if (c.x == 0 && c.y == 0) fail(Errc::non_generic_conjugator, "h(0) = 0");
  for (int j = 0; j < 2; ++j) {
    const Q dx = h.linear[0][j], dy = h.linear[1][j];
    const char* axis = j == 0 ? "x" : "y";
    if (c.x * dy - c.y * dx == 0) {
      fail(Errc::non_generic_conjugator, std::string("h-image of the ") + axis + "-axis passes through 0");
    }
    if (dx == 0 || dy == 0) {
      fail(Errc::non_generic_conjugator, std::string("h-image of the ") + axis + "-axis is parallel to an axis");
    }
  }
  Pair p;
  p.L = L;
  p.h = h;
  p.h_inv = h.inverse();
  Q l10 = 1;
  for (int i = 0; i < 10; ++i) l10 *= L;
  p.a = AffineMap::make(l10, 0, 0, 1 / l10, 0, 0);
  p.b = h.compose(p.a).compose(p.h_inv);
  p.letters[static_cast<int>(Letter::A)] = p.a;
  p.letters[static_cast<int>(Letter::B)] = p.b;
  p.letters[static_cast<int>(Letter::Ainv)] = p.a.inverse();
  p.letters[static_cast<int>(Letter::Binv)] = p.b.inverse();
  return p;
}

AffineMap pinned_h() { return AffineMap::make(Q(3, 5), Q(-4, 5), Q(4, 5), Q(3, 5), 1, 0); }

Pair pinned_pair() { return build_pair(Q(100), pinned_h()); }

namespace {

bool a_region(const Q& L, const Point& p, RegionKind k) {
  const Q ax = abs(p.x), ay = abs(p.y);
  const Q n = ax > ay ? ax : ay;
  switch (k) {
    case RegionKind::AMinus: return n * L < 1 || ax > L * ay;
    case RegionKind::AInvMinus: return n * L < 1 || ay > L * ax;
    case RegionKind::APlus: return ay > L * ax && ay > L;
    case RegionKind::AInvPlus: return ax > L * ay && ax > L;
    default: break;
  }
  return false;
}

RegionKind b_to_a(RegionKind k) {
  switch (k) {
    case RegionKind::BMinus: return RegionKind::AMinus;
    case RegionKind::BInvMinus: return RegionKind::AInvMinus;
    case RegionKind::BPlus: return RegionKind::APlus;
    case RegionKind::BInvPlus: return RegionKind::AInvPlus;
    default: return k;
  }
}

const char* letter_name(Letter u) {
  static const char* names[4] = {"a", "b", "a^-1", "b^-1"};
  return names[static_cast<int>(u)];
}

}  // namespace

bool region_member(const Pair& pair, const Point& p, RegionKind r) {
  switch (r) {
    case RegionKind::BMinus:
    case RegionKind::BInvMinus:
    case RegionKind::BPlus:
    case RegionKind::BInvPlus: return a_region(pair.L, pair.h_inv.apply(p), b_to_a(r));
    default: return a_region(pair.L, p, r);
  }
}

RegionKind repelling(Letter u) {
  switch (u) {
    case Letter::A: return RegionKind::AInvMinus;
    case Letter::Ainv: return RegionKind::AMinus;
    case Letter::B: return RegionKind::BInvMinus;
    case Letter::Binv: return RegionKind::BMinus;
  }
  return RegionKind::AMinus;
}

RegionKind attracting(Letter u) {
  switch (u) {
    case Letter::A: return RegionKind::AInvPlus;
    case Letter::Ainv: return RegionKind::APlus;
    case Letter::B: return RegionKind::BInvPlus;
    case Letter::Binv: return RegionKind::BPlus;
  }
  return RegionKind::APlus;
}

std::vector<Point> default_samples(const Pair& pair) {
  const Q& L = pair.L;
  const std::vector<Q> mags{Q(0), 1 / (L * L), 1 / (2 * L), 1 / L, Q(1, 2), Q(1), Q(2), L / 2, L, 2 * L, L * L, L * L * L};
  std::vector<Q> coords;
  for (const auto& m : mags) {
    coords.push_back(m);
    if (m != 0) coords.push_back(-m);
  }
  std::vector<Point> base;
  for (const auto& x : coords) {
    for (const auto& y : coords) base.push_back({x, y});
  }
  // Straddle the cone boundaries |x| = L|y|, |y| = L|x| and the ball 1/L.
  const Q delta = 1 / (L * L * L);
  for (const auto& s : mags) {
    if (s == 0) continue;
    for (int sign : {-1, 1}) {
      base.push_back({L * s + sign * delta, s});
      base.push_back({s, L * s + sign * delta});
    }
  }
  for (int sign : {-1, 1}) {
    base.push_back({1 / L + sign * delta, Q(0)});
    base.push_back({Q(0), 1 / L + sign * delta});
    base.push_back({L + sign * delta, Q(0)});
    base.push_back({Q(0), L + sign * delta});
  }
  std::vector<Point> out = base;
  for (const auto& p : base) out.push_back(pair.h.apply(p));
  return out;
}

InclusionReport verify_inclusions(const Pair& pair, const std::vector<Point>& samples) {
  InclusionReport r;
  auto record = [&](const Point& p, Letter u, const char* what) {
    if (!r.ok) return;
    r.ok = false;
    r.point = p;
    r.letter = letter_name(u);
    r.failed = what;
  };
  for (int li = 0; li < 4; ++li) {
    const auto u = static_cast<Letter>(li);
    const AffineMap& g = pair.letters[li];
    for (const auto& p : samples) {
      if (region_member(pair, p, attracting(u))) {
        ++r.checks;
        if (!region_member(pair, p, repelling(words::inverse(u)))) record(p, u, "containment");
      }
      if (region_member(pair, p, repelling(u))) continue;
      const Point q = g.apply(p);
      r.checks += 2;
      if (!region_member(pair, q, attracting(u))) record(p, u, "image");
      if (!(norm(q) > norm(p))) record(p, u, "dilation");
    }
  }
  return r;
}

AffineMap evaluate(const Pair& pair, const words::Word& w) {
  AffineMap g = AffineMap::identity();
  for (Letter u : w) g = g.compose(pair.letters[static_cast<int>(u)]);
  return g;
}

namespace {

struct FreenessSearch {
  const Pair& pair;
  unsigned max_len;
  Point base;
  FreenessReport report;
  words::Word word;  // stored reversed: word.back() is the first letter

  void visit(const AffineMap& m, const Point& p) {
    for (int li = 0; li < 4; ++li) {
      const auto u = static_cast<Letter>(li);
      if (!word.empty() && word.back() == words::inverse(u)) continue;
      const AffineMap& g = pair.letters[li];
      const AffineMap m2 = g.compose(m);
      const Point p2 = g.apply(p);
      word.push_back(u);
      ++report.words_checked;
      if (p2 == base || m2.is_identity()) {
        if (report.all_nontrivial) {
          report.all_nontrivial = false;
          report.counterexample = words::to_string(words::Word(word.rbegin(), word.rend()));
        }
      }
      if (!region_member(pair, p2, attracting(u))) ++report.region_misses;
      if (word.size() < max_len) visit(m2, p2);
      word.pop_back();
    }
  }
};

}  // namespace

FreenessReport freeness_certificate(const Pair& pair, unsigned max_len, const Point& base) {
  if (max_len > 12) fail(Errc::invalid_argument, "max_len is limited to 12");
  FreenessSearch s{pair, max_len, base, {}, {}};
  s.report.max_len = max_len;
  if (max_len > 0) s.visit(AffineMap::identity(), base);
  return s.report;
}

bool distinct_last_letters(const words::Word& w1, const words::Word& w2, const words::Word& w3) {
  if (w1.empty() || w2.empty() || w3.empty()) return false;
  const Letter e1 = w1.back(), e2 = w2.back(), e3 = w3.back();
  return e1 != e2 && e1 != e3 && e2 != e3;
}

LocalCommutativityReport locally_commutative_check(const Pair& pair, unsigned word_len, std::uint64_t trials,
                                                   std::uint64_t seed) {
  if (word_len == 0 || word_len > 10) fail(Errc::invalid_argument, "word_len must lie in [1, 10]");
  LocalCommutativityReport r;
  Rng rng = stream(seed, 0xc6);
  while (r.triples_checked < trials) {
    const words::Word w[3] = {words::sample_reduced_word(word_len, rng), words::sample_reduced_word(word_len, rng),
                              words::sample_reduced_word(word_len, rng)};
    if (!distinct_last_letters(w[0], w[1], w[2])) {
      ++r.triples_rejected;
      continue;
    }
    ++r.triples_checked;
    std::optional<Point> fp[3];
    for (int i = 0; i < 3; ++i) {
      fp[i] = fixed_point(evaluate(pair, w[i]));
      if (fp[i]) {
        ++r.containment_checked;
        if (!region_member(pair, *fp[i], repelling(w[i].back()))) ++r.containment_failures;
      }
    }
    if (fp[0] && fp[1] && fp[2] && *fp[0] == *fp[1] && *fp[1] == *fp[2]) ++r.common_fixed_point_failures;
  }
  return r;
}

}  // namespace cayley::pingpong
