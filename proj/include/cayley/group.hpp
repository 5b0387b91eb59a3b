#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "cayley/field.hpp"
#include "cayley/rng.hpp"

namespace cayley {

enum class Family { SL, Sp4, SU3, Cyclic };

const char* family_name(Family f);

/// Group element: an m x m matrix stored row-major in the leading m*m slots,
/// or, for the test-only cyclic family, a residue in slot 0.
struct GroupElem {
  std::array<FieldElem, 16> e{};

  FieldElem& at(unsigned m, unsigned i, unsigned j) { return e[i * m + j]; }
  FieldElem at(unsigned m, unsigned i, unsigned j) const { return e[i * m + j]; }

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

class GroupCtx;
using GroupPtr = std::shared_ptr<const GroupCtx>;

/// Extra structure carried by SU_3 contexts.
///
/// The group is {g in SL_3(F_q) : ^T g^sigma g = 1}, q = qt^2. Bruhat charts
/// are written for the isomorphic group preserving the anti-diagonal
/// Hermitian form J; `conj` satisfies ^T conj^sigma conj = J, so
/// g' -> conj g' conj^{-1} maps that model onto the identity-form group.
struct Su3Data {
  unsigned half_degree = 0;          // k/2, so sigma = frobenius(., half_degree)
  std::uint64_t qt = 0;              // q tilde
  GroupElem conj, conj_inv;
  FieldElem iota{};                  // odd p: iota^sigma = -iota, iota != 0
  FieldElem omega{};                 // p = 2: omega + omega^sigma = 1
  std::vector<FieldElem> subfield;   // F_qt in code order
};

/// Immutable matrix-group context. Shareable across threads; the lazy
/// enumeration table is built once under std::call_once.
class GroupCtx {
 public:
  static constexpr std::uint64_t kDefaultIndexCap = 4'000'000;

  static GroupPtr sl(unsigned m, FieldPtr field);
  static GroupPtr sp4(FieldPtr field);
  static GroupPtr su3(FieldPtr field);
  /// Test-only cyclic group Z/n (not a group of Lie type).
  static GroupPtr cyclic(std::uint64_t n);

  Family family() const { return family_; }
  /// Matrix dimension (1 for the cyclic family).
  unsigned dim() const { return m_; }
  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned twist_order() const { return family_ == Family::SU3 ? 2 : 1; }
  std::uint64_t cyclic_n() const { return cyclic_n_; }
  const Su3Data& su3() const { return su3_; }
  std::string name() const;

  /// Exact order of the matrix group (not of its simple quotient).
  const mpz_class& order() const { return order_; }
  /// Order as uint64; throws GroupTooLarge if it does not fit.
  std::uint64_t order_u64() const;
  bool enumerable() const { return order_ <= index_cap_; }

  GroupElem identity() const;
  GroupElem mul(const GroupElem& g, const GroupElem& h) const;
  GroupElem inv(const GroupElem& g) const;
  bool equal(const GroupElem& g, const GroupElem& h) const { return g == h; }

  /// Validates entry ranges and all defining equations.
  bool is_member(const GroupElem& g) const;
  /// Builds an element from row-major codes; throws DimensionMismatch on a
  /// wrong entry count and NotMember if the equations fail.
  GroupElem from_entries(std::span<const std::uint64_t> entries) const;
  std::vector<std::uint64_t> entries(const GroupElem& g) const;

  FieldElem det(const GroupElem& g) const;
  FieldElem trace(const GroupElem& g) const;
  /// c_1..c_m with det(X - g) = X^m + c_1 X^{m-1} + ... + c_m.
  std::vector<FieldElem> char_poly(const GroupElem& g) const;
  /// (g - 1)^m == 0.
  bool is_unipotent(const GroupElem& g) const;

  /// Bijection G <-> [0, |G|). SL_2 uses a closed form; other matrix families
  /// use a sorted table of packed entries built on first use. Throws
  /// GroupTooLarge above the index cap.
  std::uint64_t index_of(const GroupElem& g) const;
  GroupElem element_at(std::uint64_t i) const;

  /// Exactly uniform sample. SL_m via Bruhat cells, SU_3 via its twisted
  /// cells, Sp_4 via symplectic frame completion, cyclic by residue.
  GroupElem random(Rng& rng) const;

  // Matrix helpers that do not require membership.
  GroupElem mat_mul(const GroupElem& g, const GroupElem& h) const;
  GroupElem mat_inverse(const GroupElem& g) const;
  GroupElem conj_transpose(const GroupElem& g) const;
  FieldElem mat_det(const GroupElem& g) const;

 private:
  GroupCtx() = default;
  void ensure_table() const;
  std::uint64_t pack(const GroupElem& g) const;
  GroupElem unpack(std::uint64_t key) const;
  GroupElem sp4_random(Rng& rng) const;
  void sp4_enumerate(std::vector<std::uint64_t>& out) const;
  FieldElem symplectic(const FieldElem* x, const FieldElem* y) const;

  Family family_ = Family::SL;
  unsigned m_ = 0;
  FieldPtr field_;
  std::uint64_t cyclic_n_ = 0;
  mpz_class order_;
  std::uint64_t index_cap_ = kDefaultIndexCap;
  Su3Data su3_;

  mutable std::once_flag table_once_;
  mutable std::vector<std::uint64_t> table_;
};

/// Exact |SL_m(F_q)| = q^{m(m-1)/2} prod_{i=2}^m (q^i - 1).
mpz_class sl_order(unsigned m, std::uint64_t q);
/// |Sp_4(F_q)| = q^4 (q^2 - 1)(q^4 - 1).
mpz_class sp4_order(std::uint64_t q);
/// |SU_3(F_{qt^2})| = qt^3 (qt^2 - 1)(qt^3 + 1).
mpz_class su3_order(std::uint64_t qt);

}  // namespace cayley
