#include "cayley/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "cayley/error.hpp"
#include "cayley/rng.hpp"

namespace cayley::spectral {

namespace {

// Four partial sums break the add latency chain on long vectors.
double dot(std::span<const double> a, std::span<const double> b) {
  double s[4] = {0, 0, 0, 0};
  const std::size_t n = a.size(), m = n - n % 4;
  for (std::size_t i = 0; i < m; i += 4)
    for (std::size_t l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
  for (std::size_t i = m; i < n; ++i) s[0] += a[i] * b[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void scale(std::span<double> a, double c) {
  for (double& x : a) x *= c;
}

// a -= c b
void axpy(std::span<double> a, double c, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= c * b[i];
}

struct MeanNorm {
  double mean = 0;
  double norm = 0;
};

// w -= a v + b u in one pass, returning the mean of the result and the norm
// of its mean-zero part.
MeanNorm three_term(std::span<double> w, double a, std::span<const double> v, double b, std::span<const double> u) {
  double sum[4] = {0, 0, 0, 0}, sq[4] = {0, 0, 0, 0};
  const std::size_t n = w.size(), m = n - n % 4;
  for (std::size_t i = 0; i < m; i += 4)
    for (std::size_t l = 0; l < 4; ++l) {
      const double x = w[i + l] - a * v[i + l] - b * u[i + l];
      w[i + l] = x;
      sum[l] += x;
      sq[l] += x * x;
    }
  for (std::size_t i = m; i < n; ++i) {
    const double x = w[i] - a * v[i] - b * u[i];
    w[i] = x;
    sum[0] += x;
    sq[0] += x * x;
  }
  const double dn = static_cast<double>(n);
  const double mean = ((sum[0] + sum[1]) + (sum[2] + sum[3])) / dn;
  const double ss = (sq[0] + sq[1]) + (sq[2] + sq[3]) - dn * mean * mean;
  return {mean, std::sqrt(std::max(ss, 0.0))};
}

std::vector<double> random_meanzero_unit(std::size_t n, Rng& rng) {
  std::vector<double> f(n);
  for (double& x : f) x = uniform01(rng) - 0.5;
  project_mean_zero(f);
  scale(f, 1.0 / norm(f));
  return f;
}

constexpr std::size_t kFullReorthLimit = std::size_t{1} << 16;
constexpr unsigned kLanczosDefaultSteps = 3000;

SpectralReport lanczos(const walk::StepOperator& T, const SpectralOptions& opt) {
  const std::size_t n = T.order();
  SpectralReport r;
  r.method = Method::Lanczos;
  r.seed = opt.seed;
  if (n < 2) {
    r.converged = true;
    r.epsilon = 1;
    return r;
  }
  const unsigned max_steps =
      static_cast<unsigned>(std::min<std::size_t>(opt.max_iter ? opt.max_iter : kLanczosDefaultSteps, n - 1));
  const bool full_reorth = n <= kFullReorthLimit;

  Rng rng = stream(opt.seed, 0x1a2c05);
  std::vector<double> v = random_meanzero_unit(n, rng);
  std::vector<double> v_prev(n, 0.0), w(n);
  std::vector<std::vector<double>> basis;
  if (full_reorth) basis.push_back(v);
  std::vector<double> alpha, beta;

  auto solve = [&](bool final_step, double beta_last) {
    const Eigen::Index k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag(k), sub(std::max<Eigen::Index>(k - 1, 0));
    for (Eigen::Index i = 0; i < k; ++i) diag[i] = alpha[i];
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    const double res_min = std::abs(beta_last * vecs(k - 1, 0));
    const double res_max = std::abs(beta_last * vecs(k - 1, k - 1));
    r.lambda_signed_min = vals[0];
    r.lambda_signed_max = vals[k - 1];
    r.residual = std::max(res_min, res_max);
    r.iterations = static_cast<unsigned>(k);
    r.converged = final_step || r.residual <= opt.tol;
    return r.converged;
  };

  double beta_prev = 0;
  for (unsigned j = 0; j < max_steps; ++j) {
    // T is doubly stochastic, so T v stays mean-zero up to rounding; the
    // projection is folded into the three-term update.
    T.apply(v, w);
    const double a = dot(w, v);
    alpha.push_back(a);
    MeanNorm mn;
    if (full_reorth) {
      axpy(w, a, v);
      if (j > 0) axpy(w, beta_prev, v_prev);
      project_mean_zero(w);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) axpy(w, dot(w, b), b);
      }
      mn.norm = norm(w);
    } else {
      mn = three_term(w, a, v, beta_prev, v_prev);
    }
    const double b = mn.norm;
    // Invariant subspace: the tridiagonal spectrum is exact.
    if (b < 1e-10) {
      solve(true, 0.0);
      break;
    }
    const bool last = j + 1 == max_steps;
    if ((j >= 2 && j % 5 == 0) || last) {
      if (solve(false, b)) break;
    }
    beta.push_back(b);
    beta_prev = b;
    v_prev.swap(v);
    const double inv_b = 1.0 / b;
    for (std::size_t i = 0; i < n; ++i) v[i] = (w[i] - mn.mean) * inv_b;
    if (full_reorth) basis.push_back(v);
  }
  r.lambda_signed_max = std::min(r.lambda_signed_max, 1.0);
  r.lambda_signed_min = std::max(r.lambda_signed_min, -1.0);
  r.lambda_abs = std::max(std::abs(r.lambda_signed_max), std::abs(r.lambda_signed_min));
  r.epsilon = 1 - r.lambda_abs;
  return r;
}

struct PowerRun {
  double lambda = 0;  // eigenvalue of A = (I + sign T)/2
  double residual = 0;
  unsigned iterations = 0;
  bool converged = false;
};

PowerRun power_shifted(const walk::StepOperator& T, int sign, const SpectralOptions& opt, unsigned max_iter,
                       std::uint64_t stream_id) {
  const std::size_t n = T.order();
  PowerRun best;
  best.lambda = -1;
  std::vector<double> g(n), tf(n);
  for (unsigned rs = 0; rs < std::max(1u, opt.restarts); ++rs) {
    Rng rng = stream(opt.seed, stream_id + rs);
    std::vector<double> f = random_meanzero_unit(n, rng);
    PowerRun run;
    for (unsigned it = 1; it <= max_iter; ++it) {
      T.apply(f, tf);
      for (std::size_t i = 0; i < n; ++i) g[i] = 0.5 * (f[i] + sign * tf[i]);
      project_mean_zero(g);
      run.lambda = dot(g, f);
      double res2 = 0;
      for (std::size_t i = 0; i < n; ++i) res2 += (g[i] - run.lambda * f[i]) * (g[i] - run.lambda * f[i]);
      // Residual of T itself is twice that of A.
      run.residual = 2 * std::sqrt(res2);
      run.iterations = it;
      const double gn = norm(g);
      if (gn == 0) {
        run.converged = true;
        break;
      }
      f.assign(g.begin(), g.end());
      scale(f, 1.0 / gn);
      if (run.residual <= opt.tol) {
        run.converged = true;
        break;
      }
    }
    if (run.lambda > best.lambda) best = run;
  }
  return best;
}

SpectralReport power(const walk::StepOperator& T, const SpectralOptions& opt) {
  const std::size_t n = T.order();
  SpectralReport r;
  r.method = Method::Power;
  r.seed = opt.seed;
  if (n < 2) {
    r.converged = true;
    r.epsilon = 1;
    return r;
  }
  const unsigned max_iter =
      opt.max_iter ? opt.max_iter
                   : static_cast<unsigned>(std::min(10 * std::sqrt(static_cast<double>(n)) + 1000, 1e5));
  const PowerRun hi = power_shifted(T, +1, opt, max_iter, 0x100);
  const PowerRun lo = power_shifted(T, -1, opt, max_iter, 0x200);
  r.lambda_signed_max = std::min(2 * hi.lambda - 1, 1.0);
  r.lambda_signed_min = std::max(1 - 2 * lo.lambda, -1.0);
  r.lambda_abs = std::max(std::abs(r.lambda_signed_max), std::abs(r.lambda_signed_min));
  r.epsilon = 1 - r.lambda_abs;
  r.iterations = hi.iterations + lo.iterations;
  r.residual = std::max(hi.residual, lo.residual);
  r.converged = hi.converged && lo.converged;
  return r;
}

}  // namespace

void project_mean_zero(std::span<double> f) {
  if (f.empty()) return;
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  for (double& x : f) x -= mean;
}

SpectralReport spectral_norm_meanzero(const walk::StepOperator& T, const SpectralOptions& opt) {
  return opt.method == Method::Lanczos ? lanczos(T, opt) : power(T, opt);
}

SpectralReport spectral_norm_meanzero(GroupPtr ctx, std::span<const GroupElem> gens, const SpectralOptions& opt) {
  const walk::StepOperator T(walk::generator_measure(std::move(ctx), gens));
  return spectral_norm_meanzero(T, opt);
}

std::vector<double> dense_spectrum(const walk::StepOperator& T) {
  const std::size_t n = T.order();
  if (n > 4096) fail(Errc::group_too_large, "dense spectrum is limited to |G| <= 4096");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < T.degree(); ++j) {
    const auto& t = T.table(j);
    for (std::size_t x = 0; x < n; ++x) m(static_cast<Eigen::Index>(x), t[x]) += T.weights()[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

bool is_perfect_family(const GroupCtx& ctx) {
  switch (ctx.family()) {
    case Family::SL: return ctx.dim() > 2 || ctx.field().q() > 3;
    case Family::Sp4: return ctx.field().q() > 2;
    case Family::SU3: return ctx.su3().qt > 2;
    case Family::Cyclic: return ctx.cyclic_n() == 1;
  }
  return false;
}

BipartiteResult bipartite_detect(const walk::StepOperator& T) {
  const GroupCtx& G = T.ctx();
  const std::size_t n = T.order();
  BipartiteResult r;
  r.method = "bfs-2-coloring";
  std::vector<std::int8_t> color(n, -1);
  std::deque<std::uint32_t> queue;
  const auto start = static_cast<std::uint32_t>(G.index_of(G.identity()));
  color[start] = 0;
  queue.push_back(start);
  bool ok = true;
  std::uint64_t seen = 1;
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < T.degree(); ++j) {
      const std::uint32_t y = T.table(j)[x];
      if (color[y] < 0) {
        color[y] = static_cast<std::int8_t>(1 - color[x]);
        ++seen;
        queue.push_back(y);
      } else if (color[y] == color[x]) {
        ok = false;
      }
    }
  }
  r.component_size = seen;
  r.bipartite = ok;
  if (ok) {
    std::vector<GroupElem> s;
    for (auto i : T.support()) s.push_back(G.element_at(i));
    for (const auto& x : s) {
      for (const auto& y : s) r.witness.push_back(G.index_of(G.mul(x, y)));
    }
    std::sort(r.witness.begin(), r.witness.end());
    r.witness.erase(std::unique(r.witness.begin(), r.witness.end()), r.witness.end());
  }
  return r;
}

BipartiteResult bipartite_detect(GroupPtr ctx, std::span<const GroupElem> gens) {
  if (!ctx->enumerable() && is_perfect_family(*ctx)) {
    BipartiteResult r;
    r.method = "perfect-group";
    return r;
  }
  const walk::StepOperator T(walk::generator_measure(std::move(ctx), gens));
  return bipartite_detect(T);
}

BnpResult bnp_check(const walk::Measure& nu1, const walk::Measure& nu2, std::uint64_t d_min) {
  if (d_min == 0) fail(Errc::invalid_argument, "d_min must be at least 1");
  if (nu1.ctx_ptr() != nu2.ctx_ptr()) fail(Errc::context_mismatch, "measures live on different groups");
  const walk::Measure prod = walk::convolve(nu1, nu2);
  BnpResult r;
  r.lhs = walk::dist_to_uniform_l2(prod);
  r.rhs = std::sqrt(1.0 / static_cast<double>(d_min)) * walk::dist_to_uniform_l2(nu1) * walk::dist_to_uniform_l2(nu2);
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

double boundary_ratio(const GroupCtx& ctx, std::span<const GroupElem> gens, std::span<const std::uint64_t> set) {
  if (set.empty()) fail(Errc::empty_set, "set is empty");
  std::vector<std::uint64_t> a(set.begin(), set.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::vector<GroupElem> s;
  for (const auto& g : gens) {
    s.push_back(g);
    s.push_back(ctx.inv(g));
  }
  std::vector<std::uint64_t> outside;
  for (auto i : a) {
    const GroupElem x = ctx.element_at(i);
    for (const auto& g : s) {
      const std::uint64_t y = ctx.index_of(ctx.mul(x, g));
      if (!std::binary_search(a.begin(), a.end(), y)) outside.push_back(y);
    }
  }
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
  return static_cast<double>(outside.size()) / static_cast<double>(a.size());
}

}  // namespace cayley::spectral
