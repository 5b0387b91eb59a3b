#include "cayley/field.hpp"

#include <algorithm>
#include <string>

#include "cayley/error.hpp"

namespace cayley {

namespace {

using Poly = std::vector<std::uint64_t>;  // low-to-high over F_p

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g monic-or-not with nonzero leading coefficient.
Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = invmod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = mulmod(f.back(), lead_inv, p);
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + p - mulmod(c, g[i], p)) % p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace detail {

bool is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p) {
  const Poly f(monic.begin(), monic.end());
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  const Poly x{0, 1};
  // h_j = x^{p^j} mod f
  std::vector<Poly> h(k + 1);
  h[0] = poly_mod(x, f, p);
  for (std::size_t j = 1; j <= k; ++j) h[j] = poly_powmod(h[j - 1], p, f, p);
  auto minus_x = [&](Poly g) {
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    return g;
  };
  if (!minus_x(h[k]).empty()) return false;
  for (std::uint64_t r : prime_factors(k)) {
    const Poly g = poly_gcd(f, minus_x(h[k / r]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

std::shared_ptr<const FieldCtx> FieldCtx::make(std::uint64_t p, unsigned k, std::uint64_t /*seed*/) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    fail(Errc::non_prime, "field modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  if (k < 1 || k > kMaxDegree) {
    fail(Errc::too_large, "extension degree must be in [1, " + std::to_string(kMaxDegree) + "]");
  }
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > kMaxOrder / p) fail(Errc::too_large, "field order p^k exceeds 2^40");
    q *= p;
  }
  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = p;
  ctx->k_ = k;
  ctx->q_ = q;
  if (k == 1) {
    ctx->modulus_ = {0, 1};
  } else {
    Poly cand(k + 1, 0);
    cand[k] = 1;
    bool found = false;
    for (std::uint64_t code = 0; code < q && !found; ++code) {
      std::uint64_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        cand[i] = c % p;
        c /= p;
      }
      if (cand[0] == 0) continue;  // divisible by x
      if (detail::is_irreducible(cand, p)) found = true;
    }
    if (!found) fail(Errc::no_irreducible_found, "no irreducible polynomial found (internal error)");
    ctx->modulus_ = cand;
  }
  ctx->build_tables();
  return ctx;
}

void FieldCtx::build_tables() {
  frob_.assign(k_ + 1, std::vector<std::uint64_t>(std::size_t{k_} * k_, 0));
  if (k_ == 1) {
    for (auto& m : frob_) m[0] = 1;
  } else {
    const Poly& f = modulus_;
    Poly g{0, 1};  // x^{p^s}
    for (unsigned s = 0; s <= k_; ++s) {
      Poly power{1};
      for (unsigned i = 0; i < k_; ++i) {
        for (unsigned r = 0; r < k_; ++r) frob_[s][r * k_ + i] = r < power.size() ? power[r] : 0;
        power = poly_mulmod(power, g, f, p_);
      }
      g = poly_powmod(g, p_, f, p_);
    }
  }
  if (k_ > 1 && q_ <= 256) {
    mul_table_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
      for (std::uint64_t b = a; b < q_; ++b) {
        const auto c = static_cast<std::uint32_t>(mul_ext({a}, {b}).v);
        mul_table_[a * q_ + b] = c;
        mul_table_[b * q_ + a] = c;
      }
    }
  }
  if (q_ <= (std::uint64_t{1} << 16)) {
    inv_table_.assign(q_, 0);
    for (std::uint64_t a = 1; a < q_; ++a) {
      if (inv_table_[a] != 0) continue;
      const FieldElem b = k_ == 1 ? FieldElem{invmod(a, p_)} : inv_ext({a});
      inv_table_[a] = static_cast<std::uint32_t>(b.v);
      inv_table_[b.v] = static_cast<std::uint32_t>(a);
    }
  }
}

FieldElem FieldCtx::from_int(std::int64_t n) const {
  const auto sp = static_cast<std::int64_t>(p_);
  std::int64_t r = n % sp;
  if (r < 0) r += sp;
  return {static_cast<std::uint64_t>(r)};
}

FieldElem FieldCtx::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > k_) fail(Errc::invalid_argument, "too many coefficients for field degree");
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) fail(Errc::invalid_argument, "coefficient out of range [0, p)");
    v = v * p_ + coeffs[i];
  }
  return {v};
}

std::vector<std::uint64_t> FieldCtx::coeffs(FieldElem x) const {
  std::vector<std::uint64_t> c(k_);
  std::uint64_t v = x.v;
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

FieldElem FieldCtx::add_ext(FieldElem a, FieldElem b) const {
  std::uint64_t out = 0, scale = 1, x = a.v, y = b.v;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return {out};
}

FieldElem FieldCtx::sub_ext(FieldElem a, FieldElem b) const {
  std::uint64_t out = 0, scale = 1, x = a.v, y = b.v;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t xi = x % p_, yi = y % p_;
    out += (xi >= yi ? xi - yi : xi + p_ - yi) * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return {out};
}

FieldElem FieldCtx::mul_ext(FieldElem a, FieldElem b) const {
  std::uint64_t ca[kMaxDegree], cb[kMaxDegree], prod[2 * kMaxDegree] = {};
  std::uint64_t x = a.v, y = b.v;
  for (unsigned i = 0; i < k_; ++i) {
    ca[i] = x % p_;
    cb[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  }
  for (unsigned d = 2 * k_ - 2; d >= k_; --d) {
    const std::uint64_t t = prod[d];
    if (t == 0) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < k_; ++j) {
      const std::uint64_t sub = (t * modulus_[j]) % p_;
      prod[d - k_ + j] = (prod[d - k_ + j] + p_ - sub) % p_;
    }
  }
  std::uint64_t out = 0;
  for (unsigned i = k_; i-- > 0;) out = out * p_ + prod[i];
  return {out};
}

FieldElem FieldCtx::inv_ext(FieldElem a) const { return pow(a, q_ - 2); }

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "inverse of zero");
  if (!inv_table_.empty()) return {inv_table_[a.v]};
  if (k_ == 1) return {invmod(a.v, p_)};
  return inv_ext(a);
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  FieldElem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::frobenius(FieldElem x, unsigned s) const {
  if (s > k_) fail(Errc::invalid_argument, "frobenius exponent must be in [0, k]");
  if (k_ == 1 || s == 0 || s == k_) return x;
  std::uint64_t c[kMaxDegree];
  std::uint64_t v = x.v;
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  const auto& m = frob_[s];
  std::uint64_t out = 0;
  for (unsigned r = k_; r-- > 0;) {
    std::uint64_t acc = 0;
    for (unsigned i = 0; i < k_; ++i) acc = (acc + m[r * k_ + i] * c[i]) % p_;
    out = out * p_ + acc;
  }
  return {out};
}

bool FieldCtx::subfield_member(FieldElem x, unsigned j) const {
  if (j == 0 || k_ % j != 0) {
    fail(Errc::bad_divisor, "subfield index " + std::to_string(j) + " does not divide " + std::to_string(k_));
  }
  return frobenius(x, k_ / j) == x;
}

std::vector<FieldElem> FieldCtx::enumerate() const {
  if (q_ > kMaxEnumerable) fail(Errc::too_large_to_enumerate, "field too large to enumerate");
  std::vector<FieldElem> out(q_);
  for (std::uint64_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

}  // namespace cayley
