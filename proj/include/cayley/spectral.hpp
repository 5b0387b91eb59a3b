#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/walk.hpp"

namespace cayley::spectral {

enum class Method { Lanczos, Power };

struct SpectralOptions {
  Method method = Method::Lanczos;
  /// Residual tolerance for the extremal eigenpairs.
  double tol = 1e-8;
  /// 0 selects the default: Lanczos 3000 steps; power iteration
  /// min(10 sqrt|G| + 1000, 1e5) per run.
  unsigned max_iter = 0;
  /// Independent random starts for power iteration (the best is kept).
  unsigned restarts = 3;
  std::uint64_t seed = 0;
};

/// Norm of T on mean-zero functions and its signed extremes.
struct SpectralReport {
  double lambda_abs = 0;
  double lambda_signed_max = 0;
  double lambda_signed_min = 0;
  double epsilon = 0;  // 1 - lambda_abs
  unsigned iterations = 0;
  double residual = 0;
  bool converged = false;
  Method method = Method::Lanczos;
  std::uint64_t seed = 0;
};

/// Orthogonal projection onto mean-zero functions.
void project_mean_zero(std::span<double> f);

SpectralReport spectral_norm_meanzero(const walk::StepOperator& T, const SpectralOptions& opt = {});
SpectralReport spectral_norm_meanzero(GroupPtr ctx, std::span<const GroupElem> gens, const SpectralOptions& opt = {});

/// Every eigenvalue of T (constant included), ascending. |G| <= 4096.
std::vector<double> dense_spectrum(const walk::StepOperator& T);

struct BipartiteResult {
  bool bipartite = false;
  /// "bfs-2-coloring" or "perfect-group".
  std::string method;
  /// Size of the identity component of the Cayley graph (0 when not computed).
  std::uint64_t component_size = 0;
  /// Generators s_i s_j of the even subgroup, as canonical indices, sorted.
  std::vector<std::uint64_t> witness;
};

/// Searches for an index-2 subgroup of <S> avoiding S by 2-coloring the
/// Cayley graph.
BipartiteResult bipartite_detect(const walk::StepOperator& T);
/// Uses the perfect-group shortcut for families with trivial abelianization
/// when the group is above the enumeration cap; otherwise 2-colors.
BipartiteResult bipartite_detect(GroupPtr ctx, std::span<const GroupElem> gens);
/// True for SL_2 (q > 3), SL_3, SL_4, Sp_4 (q > 2) and SU_3 (qt > 2).
bool is_perfect_family(const GroupCtx& ctx);

struct BnpResult {
  bool holds = false;
  double lhs = 0;  // ||nu1 * nu2 - 1||_2
  double rhs = 0;  // sqrt(1/d_min) ||nu1 - 1||_2 ||nu2 - 1||_2
};

BnpResult bnp_check(const walk::Measure& nu1, const walk::Measure& nu2, std::uint64_t d_min);

/// |S A \ A| / |A| with S A = union of A s over s in gens and inverses.
/// Throws EmptySet.
double boundary_ratio(const GroupCtx& ctx, std::span<const GroupElem> gens, std::span<const std::uint64_t> set);

}  // namespace cayley::spectral
