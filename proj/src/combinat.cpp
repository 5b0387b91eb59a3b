#include "cayley/combinat.hpp"

#include <algorithm>
#include <unordered_map>

#include "cayley/error.hpp"

namespace cayley::combinat {

namespace {

std::vector<GroupElem> elements(const GroupCtx& ctx, const ElemSet& s) {
  std::vector<GroupElem> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(ctx.element_at(i));
  return out;
}

void require_nonempty(const ElemSet& a) {
  if (a.empty()) fail(Errc::empty_set, "set is empty");
}

}  // namespace

ElemSet make_set(std::vector<std::uint64_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

ElemSet product_set(const GroupCtx& ctx, const ElemSet& a, const ElemSet& b) {
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) > kMaxProducts) {
    fail(Errc::set_too_large, "product set would need too many products");
  }
  const auto eb = elements(ctx, b);
  std::vector<std::uint64_t> out;
  if (ctx.enumerable()) {
    std::vector<bool> seen(ctx.order_u64(), false);
    for (auto i : a) {
      const GroupElem x = ctx.element_at(i);
      for (const auto& y : eb) seen[ctx.index_of(ctx.mul(x, y))] = true;
    }
    for (std::uint64_t i = 0; i < seen.size(); ++i) {
      if (seen[i]) out.push_back(i);
    }
    return out;
  }
  for (auto i : a) {
    const GroupElem x = ctx.element_at(i);
    for (const auto& y : eb) out.push_back(ctx.index_of(ctx.mul(x, y)));
  }
  return make_set(std::move(out));
}

std::uint64_t multiplicative_energy(const GroupCtx& ctx, const ElemSet& a) {
  require_nonempty(a);
  if (a.size() > kMaxEnergySet) fail(Errc::set_too_large, "multiplicative energy is limited to |A| <= 4000");
  const auto ea = elements(ctx, a);
  std::vector<GroupElem> inv;
  inv.reserve(ea.size());
  for (const auto& x : ea) inv.push_back(ctx.inv(x));
  // r(v) = #{(a1, a2) : a1 a2^{-1} = v}; E = sum_v r(v)^2.
  std::unordered_map<std::uint64_t, std::uint64_t> r;
  r.reserve(ea.size() * ea.size() / 2 + 1);
  for (const auto& x : ea) {
    for (const auto& y : inv) ++r[ctx.index_of(ctx.mul(x, y))];
  }
  std::uint64_t e = 0;
  for (const auto& [v, c] : r) e += c * c;
  return e;
}

double tripling(const GroupCtx& ctx, const ElemSet& a) {
  require_nonempty(a);
  const ElemSet aa = product_set(ctx, a, a);
  const ElemSet aaa = product_set(ctx, aa, a);
  return static_cast<double>(aaa.size()) / static_cast<double>(a.size());
}

Cover approx_k(const GroupCtx& ctx, const ElemSet& a) {
  require_nonempty(a);
  const ElemSet aa = product_set(ctx, a, a);
  const auto ea = elements(ctx, a);
  std::vector<GroupElem> inv;
  for (const auto& x : ea) inv.push_back(ctx.inv(x));
  std::vector<bool> covered(aa.size(), false);
  std::size_t remaining = aa.size();
  auto pos = [&](std::uint64_t idx) -> std::ptrdiff_t {
    const auto it = std::lower_bound(aa.begin(), aa.end(), idx);
    return it != aa.end() && *it == idx ? it - aa.begin() : -1;
  };
  auto translate = [&](const GroupElem& x) {
    std::vector<std::uint64_t> t;
    t.reserve(ea.size());
    for (const auto& y : ea) t.push_back(ctx.index_of(ctx.mul(x, y)));
    return t;
  };
  Cover c;
  std::size_t next = 0;
  while (remaining > 0) {
    while (covered[next]) ++next;
    const GroupElem y = ctx.element_at(aa[next]);
    std::uint64_t best_x = 0;
    std::size_t best_gain = 0;
    bool have = false;
    std::vector<std::uint64_t> candidates;
    for (const auto& ai : inv) candidates.push_back(ctx.index_of(ctx.mul(y, ai)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto xi : candidates) {
      std::size_t gain = 0;
      for (auto t : translate(ctx.element_at(xi))) {
        const auto p = pos(t);
        if (p >= 0 && !covered[p]) ++gain;
      }
      if (!have || gain > best_gain) {
        best_gain = gain;
        best_x = xi;
        have = true;
      }
    }
    for (auto t : translate(ctx.element_at(best_x))) {
      const auto p = pos(t);
      if (p >= 0 && !covered[p]) {
        covered[p] = true;
        --remaining;
      }
    }
    c.translates.push_back(best_x);
  }
  c.k = c.translates.size();
  // Independent check of the cover.
  std::vector<std::uint64_t> union_set;
  for (auto xi : c.translates) {
    const auto t = translate(ctx.element_at(xi));
    union_set.insert(union_set.end(), t.begin(), t.end());
  }
  union_set = make_set(std::move(union_set));
  c.valid = std::includes(union_set.begin(), union_set.end(), aa.begin(), aa.end());
  return c;
}

ElemSet generated_subgroup(const GroupCtx& ctx, std::span<const GroupElem> gens) {
  std::vector<GroupElem> s(gens.begin(), gens.end());
  ElemSet seen{ctx.index_of(ctx.identity())};
  std::vector<GroupElem> frontier{ctx.identity()};
  std::unordered_map<std::uint64_t, bool> in;
  in[seen[0]] = true;
  while (!frontier.empty()) {
    std::vector<GroupElem> next;
    for (const auto& x : frontier) {
      for (const auto& g : s) {
        const GroupElem y = ctx.mul(x, g);
        const std::uint64_t i = ctx.index_of(y);
        if (in.emplace(i, true).second) {
          seen.push_back(i);
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return make_set(std::move(seen));
}

ElemSet ball(const GroupCtx& ctx, std::span<const GroupElem> gens, unsigned radius) {
  std::vector<GroupElem> s;
  for (const auto& g : gens) {
    s.push_back(g);
    s.push_back(ctx.inv(g));
  }
  std::unordered_map<std::uint64_t, bool> in;
  std::vector<std::uint64_t> all{ctx.index_of(ctx.identity())};
  in[all[0]] = true;
  std::vector<GroupElem> frontier{ctx.identity()};
  for (unsigned r = 0; r < radius; ++r) {
    std::vector<GroupElem> next;
    for (const auto& x : frontier) {
      for (const auto& g : s) {
        const GroupElem y = ctx.mul(x, g);
        const std::uint64_t i = ctx.index_of(y);
        if (in.emplace(i, true).second) {
          all.push_back(i);
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return make_set(std::move(all));
}

}  // namespace cayley::combinat
