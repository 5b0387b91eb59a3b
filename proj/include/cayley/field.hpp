#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace cayley {

/// Element of F_{p^k} in the polynomial basis.
///
/// The value is the integer code sum_i c_i p^i of the coefficient vector
/// (c_0, ..., c_{k-1}) with respect to 1, x, ..., x^{k-1}; zero is code 0 and
/// one is code 1. Codes are always in [0, q).
struct FieldElem {
  std::uint64_t v = 0;

  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// Immutable context for F_q, q = p^k.
///
/// The modulus is the lowest monic irreducible of degree k, where candidates
/// x^k + c_{k-1}x^{k-1} + ... + c_0 are ordered by the code sum_i c_i p^i.
/// For k = 1 the modulus is x (so F_p elements are plain residues).
class FieldCtx {
 public:
  static constexpr unsigned kMaxDegree = 6;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 40;
  static constexpr std::uint64_t kMaxEnumerable = std::uint64_t{1} << 20;

  /// Throws NonPrime, TooLarge. `seed` is accepted for interface stability and
  /// does not influence the modulus.
  static std::shared_ptr<const FieldCtx> make(std::uint64_t p, unsigned k, std::uint64_t seed = 0);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }
  /// Monic modulus, low-to-high, length k + 1.
  std::span<const std::uint64_t> modulus() const { return modulus_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_int(std::int64_t n) const;
  FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(FieldElem x) const;
  bool valid(FieldElem x) const { return x.v < q_; }

  FieldElem add(FieldElem a, FieldElem b) const {
    if (k_ == 1) {
      const std::uint64_t s = a.v + b.v;
      return {s >= p_ ? s - p_ : s};
    }
    return add_ext(a, b);
  }
  FieldElem sub(FieldElem a, FieldElem b) const {
    if (k_ == 1) return {a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    return sub_ext(a, b);
  }
  FieldElem neg(FieldElem a) const {
    if (k_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
    return sub_ext(FieldElem{0}, a);
  }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (k_ == 1) return {(a.v * b.v) % p_};
    if (!mul_table_.empty()) return {mul_table_[a.v * q_ + b.v]};
    return mul_ext(a, b);
  }
  /// Throws DivisionByZero for inv(0).
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;

  /// x^{p^s} for 0 <= s <= k; frobenius(x, k) = x.
  FieldElem frobenius(FieldElem x, unsigned s) const;

  /// True iff x lies in the subfield of index j, i.e. of size p^{k/j};
  /// equivalently x^{p^{k/j}} = x. Throws BadDivisor unless j | k.
  bool subfield_member(FieldElem x, unsigned j) const;

  /// All q elements in code order. Throws TooLargeToEnumerate for q > 2^20.
  std::vector<FieldElem> enumerate() const;

 private:
  FieldCtx() = default;

  FieldElem add_ext(FieldElem a, FieldElem b) const;
  FieldElem sub_ext(FieldElem a, FieldElem b) const;
  FieldElem mul_ext(FieldElem a, FieldElem b) const;
  FieldElem inv_ext(FieldElem a) const;
  void build_tables();

  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  // frob_[s] is the k x k matrix (row-major) of x -> x^{p^s} over F_p.
  std::vector<std::vector<std::uint64_t>> frob_;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(std::uint64_t n);

namespace detail {
/// Rabin irreducibility test for a monic polynomial over F_p (low-to-high).
bool is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p);
}  // namespace detail

}  // namespace cayley
