#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cayley/group.hpp"

namespace cayley::walk {

/// Probability measure on a group.
///
/// Storage is hybrid: a sorted sparse list while the support is small, a
/// dense vector indexed by canonical index once the support exceeds |G|/8.
/// Internally weights are plain probabilities; value() reports the
/// normalized function |G| * P(g), under which the uniform measure is 1.
class Measure {
 public:
  using Entry = std::pair<std::uint64_t, double>;

  static Measure delta(GroupPtr ctx, std::uint64_t index);
  static Measure uniform(GroupPtr ctx);
  /// Entries may repeat; weights are summed. Throws InvalidArgument if the
  /// total differs from 1 by more than 1e-9 or a weight is negative.
  static Measure from_entries(GroupPtr ctx, std::vector<Entry> entries);
  static Measure from_dense(GroupPtr ctx, std::vector<double> probs);

  const GroupCtx& ctx() const { return *ctx_; }
  const GroupPtr& ctx_ptr() const { return ctx_; }
  std::uint64_t order() const { return order_; }
  bool is_dense() const { return dense_; }
  std::size_t support_size() const;

  double prob(std::uint64_t index) const;
  double value(std::uint64_t index) const { return static_cast<double>(order_) * prob(index); }
  double total() const;

  /// Visits nonzero entries in increasing index order.
  void for_each(const std::function<void(std::uint64_t, double)>& fn) const;
  std::vector<double> dense_probs() const;
  std::vector<Entry> sparse_entries() const;

 private:
  Measure() = default;
  void settle();

  GroupPtr ctx_;
  std::uint64_t order_ = 0;
  bool dense_ = false;
  std::vector<Entry> sparse_;
  std::vector<double> dense_vec_;

  friend class StepOperator;
};

/// (1/2k) sum_i (delta_{x_i} + delta_{x_i^{-1}}), multiplicities summed.
/// Throws EmptyGenerators.
Measure generator_measure(GroupPtr ctx, std::span<const GroupElem> gens);

/// (mu1 * mu2)(g) = sum_{y x = g} mu1(y) mu2(x). Throws GroupTooLarge when
/// |supp mu1| * |supp mu2| exceeds 2e8 products.
Measure convolve(const Measure& mu1, const Measure& mu2);

/// Right convolution by a sparse symmetric measure, backed by translation
/// tables table_s[x] = index(x s^{-1}). The same operator is the averaging
/// operator T of the Cayley graph.
class StepOperator {
 public:
  /// Throws GroupTooLarge above the index cap and InvalidArgument if the
  /// measure is not symmetric or has more than 64 support points.
  explicit StepOperator(const Measure& mu);

  const GroupCtx& ctx() const { return *ctx_; }
  std::uint64_t order() const { return order_; }
  std::size_t degree() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  /// Generator indices s, aligned with weights().
  const std::vector<std::uint64_t>& support() const { return support_; }
  /// table(j)[x] = index(x s_j^{-1}).
  const std::vector<std::uint32_t>& table(std::size_t j) const { return tables_[j]; }

  /// out[x] = sum_j w_j in[table_j[x]].
  void apply(std::span<const double> in, std::span<double> out) const;
  /// nu -> nu * mu, staying sparse while the support is small.
  Measure step(const Measure& nu) const;

 private:
  GroupPtr ctx_;
  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> support_;
  std::vector<double> weights_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

/// mu^(n); power(mu, 0) is the Dirac mass at the identity. Sparse symmetric
/// measures step through a StepOperator, others by repeated convolution.
Measure power(const Measure& mu, unsigned n);

// Norms in the normalized counting measure: ||f||_p = (E_g |f(g)|^p)^(1/p)
// with f = |G| P, so the uniform measure has every norm equal to 1.
double l1_norm(const Measure& mu);
double l2_norm(const Measure& mu);
double linf_norm(const Measure& mu);
/// ||mu - 1||_inf.
double dist_to_uniform_inf(const Measure& mu);
/// ||mu - 1||_2, summed pointwise rather than as sqrt(||mu||_2^2 - 1).
double dist_to_uniform_l2(const Measure& mu);

/// Sum of P(g) over g with pred(g).
double subgroup_mass(const Measure& mu, const std::function<bool(const GroupElem&)>& pred);

/// Exact rational powers for small groups (|G| <= 10^4), used as oracles.
std::vector<mpq_class> exact_power(GroupPtr ctx, std::span<const GroupElem> gens, unsigned n);

struct PhaseRow {
  unsigned n = 0;
  double l2 = 0;
  double linf_dist = 0;
  std::uint64_t support = 0;
};

struct PhaseReport {
  double kappa = 0;
  double threshold1 = 0;        // |G|^{1/2 - kappa/2}, on ||mu^(n)||_2
  double threshold2 = 0;        // |G|^{kappa/10},      on ||mu^(n)||_2
  double threshold3 = 0;        // |G|^{-10} clamped to >= 1e-14, on ||mu^(n) - 1||_inf
  double threshold3_raw = 0;    // |G|^{-10} unclamped (may underflow to 0)
  double surrogate_inv = 0;     // |G|^{-1}
  double surrogate_abs = 1e-12;
  std::optional<unsigned> n1, n2, n3, n3_inv, n3_abs;
  std::vector<PhaseRow> trajectory;
  /// False if some step increased the L2 norm (must never happen).
  bool l2_monotone = true;
};

struct PhaseOptions {
  double kappa = 0.5;
  unsigned n_max = 10000;
  /// Stop once every threshold has been hit.
  bool stop_when_done = true;
  /// Stop once the |G|^{-1} surrogate is hit (the strict thresholds may
  /// remain unreached).
  bool stop_at_surrogate = false;
};

/// Walks mu^(n) for the generator measure of gens and records first hitting
/// times of the three phase thresholds. Throws InvalidArgument unless
/// 0 < kappa < 1.
PhaseReport phase_trace(GroupPtr ctx, std::span<const GroupElem> gens, const PhaseOptions& opt);

}  // namespace cayley::walk
