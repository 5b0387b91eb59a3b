#include "cayley/walk.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cayley/error.hpp"
#include "cayley/parallel.hpp"

namespace cayley::walk {

namespace {

constexpr double kMassTol = 1e-9;
constexpr std::size_t kMaxStepSupport = 64;
constexpr double kMaxConvolvePairs = 2e8;

void require_dense_ok(const GroupCtx& ctx) {
  if (!ctx.enumerable()) fail(Errc::group_too_large, ctx.name() + " is too large for a dense measure");
}

void merge_sorted(std::vector<Measure::Entry>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (out > 0 && v[out - 1].first == v[i].first) {
      v[out - 1].second += v[i].second;
    } else {
      v[out++] = v[i];
    }
  }
  v.resize(out);
  std::erase_if(v, [](const auto& e) { return e.second == 0.0; });
}

}  // namespace

Measure Measure::delta(GroupPtr ctx, std::uint64_t index) {
  Measure m;
  m.order_ = ctx->order_u64();
  if (index >= m.order_) fail(Errc::invalid_argument, "index out of range");
  m.ctx_ = std::move(ctx);
  m.sparse_ = {{index, 1.0}};
  return m;
}

Measure Measure::uniform(GroupPtr ctx) {
  require_dense_ok(*ctx);
  Measure m;
  m.order_ = ctx->order_u64();
  m.ctx_ = std::move(ctx);
  m.dense_ = true;
  m.dense_vec_.assign(m.order_, 1.0 / static_cast<double>(m.order_));
  return m;
}

Measure Measure::from_entries(GroupPtr ctx, std::vector<Entry> entries) {
  Measure m;
  m.order_ = ctx->order_u64();
  m.ctx_ = std::move(ctx);
  double sum = 0;
  for (const auto& [i, w] : entries) {
    if (i >= m.order_) fail(Errc::invalid_argument, "index out of range");
    if (!(w >= 0)) fail(Errc::invalid_argument, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMassTol) fail(Errc::invalid_argument, "weights do not sum to 1");
  merge_sorted(entries);
  m.sparse_ = std::move(entries);
  m.settle();
  return m;
}

Measure Measure::from_dense(GroupPtr ctx, std::vector<double> probs) {
  Measure m;
  m.order_ = ctx->order_u64();
  if (probs.size() != m.order_) fail(Errc::dimension_mismatch, "dense vector length must equal |G|");
  double sum = 0;
  for (double w : probs) {
    if (!(w >= 0)) fail(Errc::invalid_argument, "negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kMassTol) fail(Errc::invalid_argument, "weights do not sum to 1");
  m.ctx_ = std::move(ctx);
  m.dense_ = true;
  m.dense_vec_ = std::move(probs);
  return m;
}

void Measure::settle() {
  if (dense_ || sparse_.size() <= order_ / 8 || !ctx_->enumerable()) return;
  dense_vec_.assign(order_, 0.0);
  for (const auto& [i, w] : sparse_) dense_vec_[i] = w;
  sparse_.clear();
  sparse_.shrink_to_fit();
  dense_ = true;
}

std::size_t Measure::support_size() const {
  if (!dense_) return sparse_.size();
  return static_cast<std::size_t>(std::count_if(dense_vec_.begin(), dense_vec_.end(), [](double w) { return w != 0.0; }));
}

double Measure::prob(std::uint64_t index) const {
  if (index >= order_) fail(Errc::invalid_argument, "index out of range");
  if (dense_) return dense_vec_[index];
  const auto it = std::lower_bound(sparse_.begin(), sparse_.end(), index,
                                   [](const Entry& e, std::uint64_t i) { return e.first < i; });
  return it != sparse_.end() && it->first == index ? it->second : 0.0;
}

double Measure::total() const {
  double s = 0;
  for_each([&](std::uint64_t, double w) { s += w; });
  return s;
}

void Measure::for_each(const std::function<void(std::uint64_t, double)>& fn) const {
  if (dense_) {
    for (std::uint64_t i = 0; i < order_; ++i) {
      if (dense_vec_[i] != 0.0) fn(i, dense_vec_[i]);
    }
  } else {
    for (const auto& [i, w] : sparse_) fn(i, w);
  }
}

std::vector<double> Measure::dense_probs() const {
  if (dense_) return dense_vec_;
  require_dense_ok(*ctx_);
  std::vector<double> v(order_, 0.0);
  for (const auto& [i, w] : sparse_) v[i] = w;
  return v;
}

std::vector<Measure::Entry> Measure::sparse_entries() const {
  if (!dense_) return sparse_;
  std::vector<Entry> v;
  for_each([&](std::uint64_t i, double w) { v.emplace_back(i, w); });
  return v;
}

Measure generator_measure(GroupPtr ctx, std::span<const GroupElem> gens) {
  if (gens.empty()) fail(Errc::empty_generators, "generator list is empty");
  const double w = 1.0 / (2.0 * static_cast<double>(gens.size()));
  std::vector<Measure::Entry> entries;
  for (const auto& g : gens) {
    if (!ctx->is_member(g)) fail(Errc::not_member, "generator is not a member of " + ctx->name());
    entries.emplace_back(ctx->index_of(g), w);
    entries.emplace_back(ctx->index_of(ctx->inv(g)), w);
  }
  return Measure::from_entries(std::move(ctx), std::move(entries));
}

Measure convolve(const Measure& mu1, const Measure& mu2) {
  if (mu1.ctx_ptr() != mu2.ctx_ptr()) fail(Errc::context_mismatch, "measures live on different groups");
  const GroupCtx& G = mu1.ctx();
  const auto e1 = mu1.sparse_entries();
  const auto e2 = mu2.sparse_entries();
  const double pairs = static_cast<double>(e1.size()) * static_cast<double>(e2.size());
  if (pairs > kMaxConvolvePairs) fail(Errc::group_too_large, "convolution would need too many products");
  std::vector<GroupElem> x2(e2.size());
  for (std::size_t j = 0; j < e2.size(); ++j) x2[j] = G.element_at(e2[j].first);
  const std::uint64_t order = mu1.order();
  if (pairs > static_cast<double>(order) / 8 && G.enumerable()) {
    std::vector<double> out(order, 0.0);
    for (const auto& [i, w1] : e1) {
      const GroupElem y = G.element_at(i);
      for (std::size_t j = 0; j < e2.size(); ++j) out[G.index_of(G.mul(y, x2[j]))] += w1 * e2[j].second;
    }
    double s = 0;
    for (double w : out) s += w;
    for (double& w : out) w /= s;
    return Measure::from_dense(mu1.ctx_ptr(), std::move(out));
  }
  std::vector<Measure::Entry> out;
  out.reserve(e1.size() * e2.size());
  for (const auto& [i, w1] : e1) {
    const GroupElem y = G.element_at(i);
    for (std::size_t j = 0; j < e2.size(); ++j) out.emplace_back(G.index_of(G.mul(y, x2[j])), w1 * e2[j].second);
  }
  double s = 0;
  for (const auto& e : out) s += e.second;
  for (auto& e : out) e.second /= s;
  return Measure::from_entries(mu1.ctx_ptr(), std::move(out));
}

StepOperator::StepOperator(const Measure& mu) : ctx_(mu.ctx_ptr()), order_(mu.order()) {
  const GroupCtx& G = *ctx_;
  if (!G.enumerable()) fail(Errc::group_too_large, G.name() + " exceeds the enumeration cap");
  const auto entries = mu.sparse_entries();
  if (entries.size() > kMaxStepSupport) fail(Errc::invalid_argument, "step measure support is too large");
  std::vector<GroupElem> inv_s;
  for (const auto& [i, w] : entries) {
    const GroupElem s = G.element_at(i);
    const std::uint64_t j = G.index_of(G.inv(s));
    if (std::abs(mu.prob(j) - w) > 1e-12) fail(Errc::invalid_argument, "step measure must be symmetric");
    support_.push_back(i);
    weights_.push_back(w);
    inv_s.push_back(G.inv(s));
  }
  const std::size_t k = support_.size();
  tables_.assign(k, std::vector<std::uint32_t>(order_));
  parallel_for(order_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      const GroupElem g = G.element_at(x);
      for (std::size_t j = 0; j < k; ++j) {
        tables_[j][x] = static_cast<std::uint32_t>(G.index_of(G.mul(g, inv_s[j])));
      }
    }
  });
}

void StepOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != order_ || out.size() != order_) fail(Errc::dimension_mismatch, "vector length must equal |G|");
  const std::size_t k = weights_.size();
  parallel_for(order_, [&](std::size_t begin, std::size_t end) {
    if (k == 4) {
      const auto *t0 = tables_[0].data(), *t1 = tables_[1].data(), *t2 = tables_[2].data(), *t3 = tables_[3].data();
      const double w0 = weights_[0], w1 = weights_[1], w2 = weights_[2], w3 = weights_[3];
      for (std::size_t x = begin; x < end; ++x) {
        out[x] = w0 * in[t0[x]] + w1 * in[t1[x]] + w2 * in[t2[x]] + w3 * in[t3[x]];
      }
      return;
    }
    for (std::size_t x = begin; x < end; ++x) {
      double s = 0;
      for (std::size_t j = 0; j < k; ++j) s += weights_[j] * in[tables_[j][x]];
      out[x] = s;
    }
  });
}

Measure StepOperator::step(const Measure& nu) const {
  if (nu.ctx_ptr() != ctx_) fail(Errc::context_mismatch, "measure lives on a different group");
  const std::size_t k = weights_.size();
  if (!nu.is_dense() && nu.sparse_.size() * k <= order_ / 8) {
    // Push forward: by symmetry, mass at g moves to g s_j with weight w_j,
    // and g s_j = table_j'[g] for the partner j' with s_j' = s_j^{-1}.
    std::vector<Measure::Entry> out;
    out.reserve(nu.sparse_.size() * k);
    for (const auto& [g, p] : nu.sparse_) {
      for (std::size_t j = 0; j < k; ++j) out.emplace_back(tables_[j][g], p * weights_[j]);
    }
    merge_sorted(out);
    Measure m;
    m.ctx_ = ctx_;
    m.order_ = order_;
    m.sparse_ = std::move(out);
    m.settle();
    return m;
  }
  const std::vector<double> in = nu.dense_probs();
  Measure m;
  m.ctx_ = ctx_;
  m.order_ = order_;
  m.dense_ = true;
  m.dense_vec_.assign(order_, 0.0);
  apply(in, m.dense_vec_);
  return m;
}

Measure power(const Measure& mu, unsigned n) {
  const GroupCtx& G = mu.ctx();
  Measure acc = Measure::delta(mu.ctx_ptr(), G.index_of(G.identity()));
  if (n == 0) return acc;
  bool symmetric = mu.support_size() <= kMaxStepSupport && G.enumerable();
  if (symmetric) {
    for (const auto& [i, w] : mu.sparse_entries()) {
      if (std::abs(mu.prob(G.index_of(G.inv(G.element_at(i)))) - w) > 1e-12) symmetric = false;
    }
  }
  if (symmetric) {
    const StepOperator T(mu);
    for (unsigned i = 0; i < n; ++i) acc = T.step(acc);
    return acc;
  }
  for (unsigned i = 0; i < n; ++i) acc = convolve(acc, mu);
  return acc;
}

namespace {

struct Moments {
  double sum_sq = 0;
  double max_p = 0;
  double max_dev = 0;  // max |order * p - 1|
  double sum_dev_sq = 0;
  std::uint64_t support = 0;
};

Moments moments(const Measure& mu) {
  Moments m;
  const double order = static_cast<double>(mu.order());
  mu.for_each([&](std::uint64_t, double p) {
    m.sum_sq += p * p;
    m.max_p = std::max(m.max_p, p);
    m.max_dev = std::max(m.max_dev, std::abs(order * p - 1.0));
    m.sum_dev_sq += (order * p - 1.0) * (order * p - 1.0);
    ++m.support;
  });
  if (m.support < mu.order()) m.max_dev = std::max(m.max_dev, 1.0);
  return m;
}

}  // namespace

double l1_norm(const Measure& mu) { return mu.total(); }

double l2_norm(const Measure& mu) { return std::sqrt(static_cast<double>(mu.order()) * moments(mu).sum_sq); }

double linf_norm(const Measure& mu) { return static_cast<double>(mu.order()) * moments(mu).max_p; }

double dist_to_uniform_inf(const Measure& mu) { return moments(mu).max_dev; }

// Summed directly: ||mu||_2^2 - 1 cancels catastrophically near uniform.
double dist_to_uniform_l2(const Measure& mu) {
  const Moments m = moments(mu);
  const double order = static_cast<double>(mu.order());
  return std::sqrt((m.sum_dev_sq + static_cast<double>(mu.order() - m.support)) / order);
}

double subgroup_mass(const Measure& mu, const std::function<bool(const GroupElem&)>& pred) {
  const GroupCtx& G = mu.ctx();
  double s = 0;
  mu.for_each([&](std::uint64_t i, double p) {
    if (pred(G.element_at(i))) s += p;
  });
  return s;
}

std::vector<mpq_class> exact_power(GroupPtr ctx, std::span<const GroupElem> gens, unsigned n) {
  if (gens.empty()) fail(Errc::empty_generators, "generator list is empty");
  const GroupCtx& G = *ctx;
  const std::uint64_t order = G.order_u64();
  if (order > 10000) fail(Errc::group_too_large, "exact mode is limited to |G| <= 10^4");
  std::vector<GroupElem> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(G.inv(g));
  }
  const mpq_class w(1, static_cast<unsigned long>(steps.size()));
  std::vector<std::vector<std::uint64_t>> tables(steps.size(), std::vector<std::uint64_t>(order));
  for (std::uint64_t x = 0; x < order; ++x) {
    const GroupElem g = G.element_at(x);
    for (std::size_t j = 0; j < steps.size(); ++j) tables[j][x] = G.index_of(G.mul(g, steps[j]));
  }
  std::vector<mpq_class> cur(order, 0);
  cur[G.index_of(G.identity())] = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<mpq_class> next(order, 0);
    for (std::uint64_t x = 0; x < order; ++x) {
      if (cur[x] == 0) continue;
      const mpq_class m = cur[x] * w;
      for (std::size_t j = 0; j < steps.size(); ++j) next[tables[j][x]] += m;
    }
    cur.swap(next);
  }
  return cur;
}

PhaseReport phase_trace(GroupPtr ctx, std::span<const GroupElem> gens, const PhaseOptions& opt) {
  if (!(opt.kappa > 0 && opt.kappa < 1)) fail(Errc::invalid_argument, "kappa must lie in (0, 1)");
  const Measure mu = generator_measure(ctx, gens);
  const StepOperator T(mu);
  const double order = static_cast<double>(T.order());
  const double lg = std::log(order);
  PhaseReport r;
  r.kappa = opt.kappa;
  r.threshold1 = std::exp(lg * (0.5 - opt.kappa / 2));
  r.threshold2 = std::exp(lg * (opt.kappa / 10));
  r.threshold3_raw = std::pow(order, -10.0);
  r.threshold3 = std::max(r.threshold3_raw, 1e-14);
  r.surrogate_inv = 1.0 / order;

  Measure cur = Measure::delta(ctx, ctx->index_of(ctx->identity()));
  double prev_l2 = 0;
  for (unsigned n = 0;; ++n) {
    const Moments m = moments(cur);
    PhaseRow row{n, std::sqrt(order * m.sum_sq), m.max_dev, m.support};
    if (n > 0 && row.l2 > prev_l2 * (1 + 1e-12)) r.l2_monotone = false;
    prev_l2 = row.l2;
    r.trajectory.push_back(row);
    if (!r.n1 && row.l2 <= r.threshold1) r.n1 = n;
    if (!r.n2 && row.l2 <= r.threshold2) r.n2 = n;
    if (!r.n3 && row.linf_dist <= r.threshold3) r.n3 = n;
    if (!r.n3_inv && row.linf_dist <= r.surrogate_inv) r.n3_inv = n;
    if (!r.n3_abs && row.linf_dist <= r.surrogate_abs) r.n3_abs = n;
    if (opt.stop_when_done && r.n1 && r.n2 && r.n3 && r.n3_inv && r.n3_abs) break;
    if (opt.stop_at_surrogate && r.n3_inv) break;
    if (n >= opt.n_max) break;
    cur = T.step(cur);
  }
  return r;
}

}  // namespace cayley::walk
