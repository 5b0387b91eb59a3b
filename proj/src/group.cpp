#include "cayley/group.hpp"

#include <algorithm>
#include <numeric>

#include "cayley/bruhat.hpp"
#include "cayley/error.hpp"

namespace cayley {

const char* family_name(Family f) {
  switch (f) {
    case Family::SL: return "SL";
    case Family::Sp4: return "Sp4";
    case Family::SU3: return "SU3";
    case Family::Cyclic: return "Cyclic";
  }
  return "?";
}

mpz_class sl_order(unsigned m, std::uint64_t q) {
  mpz_class qq(static_cast<unsigned long>(q));
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), qq.get_mpz_t(), m * (m - 1) / 2);
  for (unsigned i = 2; i <= m; ++i) {
    mpz_class qi;
    mpz_pow_ui(qi.get_mpz_t(), qq.get_mpz_t(), i);
    r *= qi - 1;
  }
  return r;
}

mpz_class sp4_order(std::uint64_t q) {
  mpz_class qq(static_cast<unsigned long>(q));
  const mpz_class q2 = qq * qq;
  const mpz_class q4 = q2 * q2;
  return q4 * (q2 - 1) * (q4 - 1);
}

mpz_class su3_order(std::uint64_t qt) {
  mpz_class t(static_cast<unsigned long>(qt));
  const mpz_class t2 = t * t;
  const mpz_class t3 = t2 * t;
  return t3 * (t2 - 1) * (t3 + 1);
}

namespace {

void require_field(const FieldPtr& f) {
  if (!f) fail(Errc::invalid_argument, "null field context");
}

}  // namespace

GroupPtr GroupCtx::sl(unsigned m, FieldPtr field) {
  require_field(field);
  if (m < 2 || m > 4) fail(Errc::unsupported, "SL_m supported for m in {2,3,4}");
  std::shared_ptr<GroupCtx> g(new GroupCtx());
  g->family_ = Family::SL;
  g->m_ = m;
  g->order_ = sl_order(m, field->q());
  g->field_ = std::move(field);
  return g;
}

GroupPtr GroupCtx::sp4(FieldPtr field) {
  require_field(field);
  std::shared_ptr<GroupCtx> g(new GroupCtx());
  g->family_ = Family::Sp4;
  g->m_ = 4;
  g->order_ = sp4_order(field->q());
  g->field_ = std::move(field);
  return g;
}

GroupPtr GroupCtx::su3(FieldPtr field) {
  require_field(field);
  if (field->k() % 2 != 0) {
    fail(Errc::unsupported_field_degree, "SU_3 needs an even extension degree (q = qt^2)");
  }
  if (field->q() > FieldCtx::kMaxEnumerable) fail(Errc::too_large, "SU_3 supported for q <= 2^20");
  std::shared_ptr<GroupCtx> g(new GroupCtx());
  g->family_ = Family::SU3;
  g->m_ = 3;
  g->field_ = field;
  const FieldCtx& F = *field;
  Su3Data& d = g->su3_;
  d.half_degree = F.k() / 2;
  d.qt = 1;
  for (unsigned i = 0; i < d.half_degree; ++i) d.qt *= F.p();
  g->order_ = su3_order(d.qt);
  for (FieldElem x : F.enumerate()) {
    if (F.frobenius(x, d.half_degree) == x) d.subfield.push_back(x);
  }
  auto sigma = [&](FieldElem x) { return F.frobenius(x, d.half_degree); };
  if (F.p() == 2) {
    for (std::uint64_t c = 0; c < F.q(); ++c) {
      if (F.add(FieldElem{c}, sigma(FieldElem{c})) == F.one()) {
        d.omega = {c};
        break;
      }
    }
  } else {
    for (std::uint64_t c = 1; c < F.q(); ++c) {
      if (sigma(FieldElem{c}) == F.neg(FieldElem{c})) {
        d.iota = {c};
        break;
      }
    }
  }

  // Frame c1, c2, c3 with <ci, cj> = J_ij for the anti-diagonal J, where
  // <u, v> = sum_i u_i^sigma v_i. Deterministic search from a fixed seed.
  using Vec = std::array<FieldElem, 3>;
  auto herm = [&](const Vec& u, const Vec& v) {
    FieldElem s = F.zero();
    for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(sigma(u[i]), v[i]));
    return s;
  };
  auto scale = [&](FieldElem c, Vec v) {
    for (auto& x : v) x = F.mul(c, x);
    return v;
  };
  Rng rng(0x5c3a11d5eedULL);
  auto random_vec = [&]() {
    Vec v;
    for (auto& x : v) x = {uniform_below(rng, F.q())};
    return v;
  };
  auto is_zero = [&](const Vec& v) { return v[0].v == 0 && v[1].v == 0 && v[2].v == 0; };
  Vec c1, c2, c3;
  do {
    c1 = random_vec();
  } while (is_zero(c1) || herm(c1, c1).v != 0);
  for (;;) {
    Vec w = random_vec();
    if (herm(w, w).v != 0) continue;
    const FieldElem s = herm(c1, w);
    if (s.v == 0) continue;
    c3 = scale(F.inv(s), w);
    break;
  }
  for (;;) {
    const Vec v = random_vec();
    const FieldElem a = herm(c3, v), b = herm(c1, v);
    Vec w;
    for (int i = 0; i < 3; ++i) w[i] = F.sub(F.sub(v[i], F.mul(a, c1[i])), F.mul(b, c3[i]));
    const FieldElem n = herm(w, w);
    if (n.v == 0) continue;
    const FieldElem target = F.inv(n);
    bool found = false;
    for (std::uint64_t c = 1; c < F.q() && !found; ++c) {
      const FieldElem mu{c};
      if (F.mul(sigma(mu), mu) == target) {
        c2 = scale(mu, w);
        found = true;
      }
    }
    if (found) break;
  }
  for (int i = 0; i < 3; ++i) {
    d.conj.at(3, i, 0) = c1[i];
    d.conj.at(3, i, 1) = c2[i];
    d.conj.at(3, i, 2) = c3[i];
  }
  d.conj_inv = g->mat_inverse(d.conj);
  return g;
}

GroupPtr GroupCtx::cyclic(std::uint64_t n) {
  if (n == 0) fail(Errc::invalid_argument, "cyclic group order must be positive");
  std::shared_ptr<GroupCtx> g(new GroupCtx());
  g->family_ = Family::Cyclic;
  g->m_ = 1;
  g->cyclic_n_ = n;
  g->order_ = mpz_class(static_cast<unsigned long>(n));
  return g;
}

std::string GroupCtx::name() const {
  switch (family_) {
    case Family::SL: return "SL_" + std::to_string(m_) + "(F_" + std::to_string(field_->q()) + ")";
    case Family::Sp4: return "Sp_4(F_" + std::to_string(field_->q()) + ")";
    case Family::SU3: return "SU_3(F_" + std::to_string(field_->q()) + ")";
    case Family::Cyclic: return "Cyclic(" + std::to_string(cyclic_n_) + ")";
  }
  return "?";
}

std::uint64_t GroupCtx::order_u64() const {
  if (!order_.fits_ulong_p()) fail(Errc::group_too_large, "group order does not fit in 64 bits");
  return order_.get_ui();
}

GroupElem GroupCtx::identity() const {
  GroupElem g;
  if (family_ == Family::Cyclic) return g;
  for (unsigned i = 0; i < m_; ++i) g.at(m_, i, i) = field_->one();
  return g;
}

GroupElem GroupCtx::mat_mul(const GroupElem& g, const GroupElem& h) const {
  const FieldCtx& F = *field_;
  GroupElem r;
  if (m_ == 2 && F.is_prime_field()) {
    const std::uint64_t p = F.p();
    const std::uint64_t a = g.e[0].v, b = g.e[1].v, c = g.e[2].v, d = g.e[3].v;
    const std::uint64_t x = h.e[0].v, y = h.e[1].v, z = h.e[2].v, w = h.e[3].v;
    r.e[0].v = (a * x + b * z) % p;
    r.e[1].v = (a * y + b * w) % p;
    r.e[2].v = (c * x + d * z) % p;
    r.e[3].v = (c * y + d * w) % p;
    return r;
  }
  for (unsigned i = 0; i < m_; ++i) {
    for (unsigned j = 0; j < m_; ++j) {
      FieldElem s = F.zero();
      for (unsigned k = 0; k < m_; ++k) s = F.add(s, F.mul(g.at(m_, i, k), h.at(m_, k, j)));
      r.at(m_, i, j) = s;
    }
  }
  return r;
}

GroupElem GroupCtx::mul(const GroupElem& g, const GroupElem& h) const {
  if (family_ == Family::Cyclic) {
    GroupElem r;
    r.e[0].v = (g.e[0].v + h.e[0].v) % cyclic_n_;
    return r;
  }
  return mat_mul(g, h);
}

GroupElem GroupCtx::conj_transpose(const GroupElem& g) const {
  GroupElem r;
  for (unsigned i = 0; i < m_; ++i) {
    for (unsigned j = 0; j < m_; ++j) r.at(m_, i, j) = field_->frobenius(g.at(m_, j, i), su3_.half_degree);
  }
  return r;
}

GroupElem GroupCtx::mat_inverse(const GroupElem& g) const {
  const FieldCtx& F = *field_;
  const unsigned m = m_;
  GroupElem a = g;
  GroupElem r;
  for (unsigned i = 0; i < m; ++i) r.at(m, i, i) = F.one();
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    while (piv < m && a.at(m, piv, col).v == 0) ++piv;
    if (piv == m) fail(Errc::not_member, "matrix is singular");
    if (piv != col) {
      for (unsigned j = 0; j < m; ++j) {
        std::swap(a.at(m, piv, j), a.at(m, col, j));
        std::swap(r.at(m, piv, j), r.at(m, col, j));
      }
    }
    const FieldElem s = F.inv(a.at(m, col, col));
    for (unsigned j = 0; j < m; ++j) {
      a.at(m, col, j) = F.mul(s, a.at(m, col, j));
      r.at(m, col, j) = F.mul(s, r.at(m, col, j));
    }
    for (unsigned i = 0; i < m; ++i) {
      if (i == col) continue;
      const FieldElem f = a.at(m, i, col);
      if (f.v == 0) continue;
      for (unsigned j = 0; j < m; ++j) {
        a.at(m, i, j) = F.sub(a.at(m, i, j), F.mul(f, a.at(m, col, j)));
        r.at(m, i, j) = F.sub(r.at(m, i, j), F.mul(f, r.at(m, col, j)));
      }
    }
  }
  return r;
}

GroupElem GroupCtx::inv(const GroupElem& g) const {
  if (family_ == Family::Cyclic) {
    GroupElem r;
    r.e[0].v = (cyclic_n_ - g.e[0].v) % cyclic_n_;
    return r;
  }
  const FieldCtx& F = *field_;
  switch (family_) {
    case Family::SL:
      if (m_ == 2) {
        GroupElem r;
        r.e[0] = g.e[3];
        r.e[1] = F.neg(g.e[1]);
        r.e[2] = F.neg(g.e[2]);
        r.e[3] = g.e[0];
        return r;
      }
      return mat_inverse(g);
    case Family::SU3:
      return conj_transpose(g);
    case Family::Sp4: {
      // g^{-1} = J^{-1} g^T J with J^{-1} = -J; entrywise this is
      // (g^{-1})_{ij} = s_i s_j g_{3-j, 3-i}, s = (+, +, -, -).
      static constexpr int sign[4] = {1, 1, -1, -1};
      GroupElem r;
      for (unsigned i = 0; i < 4; ++i) {
        for (unsigned j = 0; j < 4; ++j) {
          const FieldElem v = g.at(4, 3 - j, 3 - i);
          r.at(4, i, j) = sign[i] * sign[j] > 0 ? v : F.neg(v);
        }
      }
      return r;
    }
    case Family::Cyclic: break;
  }
  return g;
}

FieldElem GroupCtx::mat_det(const GroupElem& g) const {
  const FieldCtx& F = *field_;
  const unsigned m = m_;
  GroupElem a = g;
  FieldElem det = F.one();
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    while (piv < m && a.at(m, piv, col).v == 0) ++piv;
    if (piv == m) return F.zero();
    if (piv != col) {
      for (unsigned j = 0; j < m; ++j) std::swap(a.at(m, piv, j), a.at(m, col, j));
      det = F.neg(det);
    }
    const FieldElem pv = a.at(m, col, col);
    det = F.mul(det, pv);
    const FieldElem s = F.inv(pv);
    for (unsigned i = col + 1; i < m; ++i) {
      const FieldElem f = F.mul(a.at(m, i, col), s);
      if (f.v == 0) continue;
      for (unsigned j = col; j < m; ++j) a.at(m, i, j) = F.sub(a.at(m, i, j), F.mul(f, a.at(m, col, j)));
    }
  }
  return det;
}

FieldElem GroupCtx::det(const GroupElem& g) const {
  if (family_ == Family::Cyclic) fail(Errc::unsupported_family, "det undefined for the cyclic family");
  return mat_det(g);
}

FieldElem GroupCtx::trace(const GroupElem& g) const {
  if (family_ == Family::Cyclic) fail(Errc::unsupported_family, "trace undefined for the cyclic family");
  FieldElem s = field_->zero();
  for (unsigned i = 0; i < m_; ++i) s = field_->add(s, g.at(m_, i, i));
  return s;
}

FieldElem GroupCtx::symplectic(const FieldElem* x, const FieldElem* y) const {
  const FieldCtx& F = *field_;
  FieldElem s = F.add(F.mul(x[0], y[3]), F.mul(x[1], y[2]));
  s = F.sub(s, F.mul(x[2], y[1]));
  return F.sub(s, F.mul(x[3], y[0]));
}

bool GroupCtx::is_member(const GroupElem& g) const {
  if (family_ == Family::Cyclic) return g.e[0].v < cyclic_n_;
  const FieldCtx& F = *field_;
  for (unsigned i = 0; i < m_ * m_; ++i) {
    if (!F.valid(g.e[i])) return false;
  }
  for (unsigned i = m_ * m_; i < 16; ++i) {
    if (g.e[i].v != 0) return false;
  }
  if (mat_det(g) != F.one()) return false;
  if (family_ == Family::SU3) return conj_transpose(g) == mat_inverse(g);
  if (family_ == Family::Sp4) {
    FieldElem col[4][4];
    for (unsigned j = 0; j < 4; ++j) {
      for (unsigned i = 0; i < 4; ++i) col[j][i] = g.at(4, i, j);
    }
    const FieldElem one = F.one(), minus = F.neg(F.one());
    for (unsigned i = 0; i < 4; ++i) {
      for (unsigned j = 0; j < 4; ++j) {
        FieldElem want = F.zero();
        if (i + j == 3) want = i < j ? one : minus;
        if (symplectic(col[i], col[j]) != want) return false;
      }
    }
  }
  return true;
}

GroupElem GroupCtx::from_entries(std::span<const std::uint64_t> entries) const {
  GroupElem g;
  const std::size_t want = std::size_t{m_} * m_;
  if (entries.size() != want) {
    fail(Errc::dimension_mismatch,
         "expected " + std::to_string(want) + " entries, got " + std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < want; ++i) g.e[i].v = entries[i];
  if (!is_member(g)) fail(Errc::not_member, "matrix is not a member of " + name());
  return g;
}

std::vector<std::uint64_t> GroupCtx::entries(const GroupElem& g) const {
  std::vector<std::uint64_t> out(std::size_t{m_} * m_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.e[i].v;
  return out;
}

std::vector<FieldElem> GroupCtx::char_poly(const GroupElem& g) const {
  if (family_ == Family::Cyclic) fail(Errc::unsupported_family, "char_poly undefined for the cyclic family");
  const FieldCtx& F = *field_;
  const unsigned m = m_;
  // c_k = (-1)^k * (sum of principal k x k minors).
  std::vector<FieldElem> c(m, F.zero());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    unsigned idx[4];
    unsigned k = 0;
    for (unsigned i = 0; i < m; ++i) {
      if (mask & (1u << i)) idx[k++] = i;
    }
    // determinant of the k x k principal submatrix via a temporary context-free elimination
    FieldElem a[4][4];
    for (unsigned i = 0; i < k; ++i) {
      for (unsigned j = 0; j < k; ++j) a[i][j] = g.at(m, idx[i], idx[j]);
    }
    FieldElem det = F.one();
    for (unsigned col = 0; col < k && det.v != 0; ++col) {
      unsigned piv = col;
      while (piv < k && a[piv][col].v == 0) ++piv;
      if (piv == k) {
        det = F.zero();
        break;
      }
      if (piv != col) {
        for (unsigned j = 0; j < k; ++j) std::swap(a[piv][j], a[col][j]);
        det = F.neg(det);
      }
      det = F.mul(det, a[col][col]);
      const FieldElem s = F.inv(a[col][col]);
      for (unsigned i = col + 1; i < k; ++i) {
        const FieldElem f = F.mul(a[i][col], s);
        for (unsigned j = col; j < k; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[col][j]));
      }
    }
    c[k - 1] = F.add(c[k - 1], det);
  }
  for (unsigned k = 1; k <= m; ++k) {
    if (k % 2 == 1) c[k - 1] = F.neg(c[k - 1]);
  }
  return c;
}

bool GroupCtx::is_unipotent(const GroupElem& g) const {
  if (family_ == Family::Cyclic) return g.e[0].v == 0;
  const FieldCtx& F = *field_;
  GroupElem n = g;
  for (unsigned i = 0; i < m_; ++i) n.at(m_, i, i) = F.sub(n.at(m_, i, i), F.one());
  GroupElem p = n;
  for (unsigned k = 1; k < m_; ++k) p = mat_mul(p, n);
  for (unsigned i = 0; i < m_ * m_; ++i) {
    if (p.e[i].v != 0) return false;
  }
  return true;
}

std::uint64_t GroupCtx::pack(const GroupElem& g) const {
  const std::uint64_t q = field_->q();
  std::uint64_t key = 0;
  for (unsigned i = m_ * m_; i-- > 0;) key = key * q + g.e[i].v;
  return key;
}

GroupElem GroupCtx::unpack(std::uint64_t key) const {
  const std::uint64_t q = field_->q();
  GroupElem g;
  for (unsigned i = 0; i < m_ * m_; ++i) {
    g.e[i].v = key % q;
    key /= q;
  }
  return g;
}

void GroupCtx::ensure_table() const {
  if (!enumerable()) fail(Errc::group_too_large, name() + " exceeds the enumeration cap");
  {
    mpz_class span;
    mpz_pow_ui(span.get_mpz_t(), mpz_class(static_cast<unsigned long>(field_->q())).get_mpz_t(), m_ * m_);
    if (span > mpz_class("18446744073709551615")) {
      fail(Errc::group_too_large, "packed matrix keys do not fit in 64 bits");
    }
  }
  std::call_once(table_once_, [this] {
    std::vector<std::uint64_t> keys;
    keys.reserve(order_.get_ui());
    auto push = [&](const GroupElem& g) { keys.push_back(pack(g)); };
    switch (family_) {
      case Family::SL:
        for (const auto& w : bruhat::weyl_elements(m_)) bruhat::for_each_in_cell(*this, w, push);
        break;
      case Family::SU3:
        bruhat::su3_for_each(*this, push);
        break;
      case Family::Sp4:
        sp4_enumerate(keys);
        break;
      case Family::Cyclic:
        break;
    }
    std::sort(keys.begin(), keys.end());
    const bool unique = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
    if (!unique || keys.size() != order_.get_ui()) {
      fail(Errc::internal, "enumeration of " + name() + " produced " + std::to_string(keys.size()) +
                               " elements (duplicates: " + (unique ? "no" : "yes") + ")");
    }
    table_ = std::move(keys);
  });
}

std::uint64_t GroupCtx::index_of(const GroupElem& g) const {
  if (family_ == Family::Cyclic) return g.e[0].v;
  if (family_ == Family::SL && m_ == 2) {
    const FieldCtx& F = *field_;
    const std::uint64_t q = F.q();
    const std::uint64_t a = g.e[0].v, b = g.e[1].v, c = g.e[2].v, d = g.e[3].v;
    if (a != 0) return ((a - 1) * q + b) * q + c;
    return (q - 1) * q * q + (b - 1) * q + d;
  }
  ensure_table();
  const std::uint64_t key = pack(g);
  const auto it = std::lower_bound(table_.begin(), table_.end(), key);
  if (it == table_.end() || *it != key) fail(Errc::not_member, "element not found in " + name());
  return static_cast<std::uint64_t>(it - table_.begin());
}

GroupElem GroupCtx::element_at(std::uint64_t i) const {
  if (order_ <= i) fail(Errc::invalid_argument, "index out of range");
  if (family_ == Family::Cyclic) {
    GroupElem g;
    g.e[0].v = i;
    return g;
  }
  if (family_ == Family::SL && m_ == 2) {
    const FieldCtx& F = *field_;
    const std::uint64_t q = F.q();
    GroupElem g;
    if (i < (q - 1) * q * q) {
      const FieldElem a{i / (q * q) + 1}, b{(i / q) % q}, c{i % q};
      g.e[0] = a;
      g.e[1] = b;
      g.e[2] = c;
      g.e[3] = F.div(F.add(F.one(), F.mul(b, c)), a);
    } else {
      const std::uint64_t j = i - (q - 1) * q * q;
      const FieldElem b{j / q + 1}, d{j % q};
      g.e[1] = b;
      g.e[2] = F.neg(F.inv(b));
      g.e[3] = d;
    }
    return g;
  }
  ensure_table();
  return unpack(table_[i]);
}

GroupElem GroupCtx::sp4_random(Rng& rng) const {
  const FieldCtx& F = *field_;
  using Vec = std::array<FieldElem, 4>;
  auto rand_vec = [&] {
    Vec v;
    for (auto& x : v) x = {uniform_below(rng, F.q())};
    return v;
  };
  auto nonzero = [](const Vec& v) { return v[0].v || v[1].v || v[2].v || v[3].v; };
  auto scale = [&](FieldElem s, Vec v) {
    for (auto& x : v) x = F.mul(s, x);
    return v;
  };
  // Symplectic projection onto the complement of the hyperbolic pair (e, f).
  auto project = [&](const Vec& v, const Vec& e, const Vec& f) {
    const FieldElem vf = symplectic(v.data(), f.data()), ve = symplectic(v.data(), e.data());
    Vec r;
    for (int i = 0; i < 4; ++i) r[i] = F.add(F.sub(v[i], F.mul(vf, e[i])), F.mul(ve, f[i]));
    return r;
  };
  Vec c0, c1, c2, c3;
  do {
    c0 = rand_vec();
  } while (!nonzero(c0));
  for (;;) {
    const Vec v = rand_vec();
    const FieldElem s = symplectic(c0.data(), v.data());
    if (s.v == 0) continue;
    c3 = scale(F.inv(s), v);
    break;
  }
  do {
    c1 = project(rand_vec(), c0, c3);
  } while (!nonzero(c1));
  for (;;) {
    const Vec v = project(rand_vec(), c0, c3);
    const FieldElem s = symplectic(c1.data(), v.data());
    if (s.v == 0) continue;
    c2 = scale(F.inv(s), v);
    break;
  }
  GroupElem g;
  const Vec* cols[4] = {&c0, &c1, &c2, &c3};
  for (unsigned j = 0; j < 4; ++j) {
    for (unsigned i = 0; i < 4; ++i) g.at(4, i, j) = (*cols[j])[i];
  }
  return g;
}

void GroupCtx::sp4_enumerate(std::vector<std::uint64_t>& out) const {
  const FieldCtx& F = *field_;
  const std::uint64_t q = F.q();
  const std::uint64_t nvec = q * q * q * q;
  std::vector<std::array<FieldElem, 4>> vecs(nvec);
  for (std::uint64_t c = 0; c < nvec; ++c) {
    std::uint64_t x = c;
    for (int i = 0; i < 4; ++i) {
      vecs[c][i] = {x % q};
      x /= q;
    }
  }
  const FieldElem one = F.one();
  for (std::uint64_t i0 = 1; i0 < nvec; ++i0) {
    const auto& c0 = vecs[i0];
    for (std::uint64_t i3 = 0; i3 < nvec; ++i3) {
      const auto& c3 = vecs[i3];
      if (symplectic(c0.data(), c3.data()) != one) continue;
      for (std::uint64_t i1 = 1; i1 < nvec; ++i1) {
        const auto& c1 = vecs[i1];
        if (symplectic(c0.data(), c1.data()).v != 0 || symplectic(c3.data(), c1.data()).v != 0) continue;
        for (std::uint64_t i2 = 1; i2 < nvec; ++i2) {
          const auto& c2 = vecs[i2];
          if (symplectic(c1.data(), c2.data()) != one) continue;
          if (symplectic(c0.data(), c2.data()).v != 0 || symplectic(c3.data(), c2.data()).v != 0) continue;
          GroupElem g;
          for (unsigned r = 0; r < 4; ++r) {
            g.at(4, r, 0) = c0[r];
            g.at(4, r, 1) = c1[r];
            g.at(4, r, 2) = c2[r];
            g.at(4, r, 3) = c3[r];
          }
          out.push_back(pack(g));
        }
      }
    }
  }
}

GroupElem GroupCtx::random(Rng& rng) const {
  switch (family_) {
    case Family::Cyclic: {
      GroupElem g;
      g.e[0].v = uniform_below(rng, cyclic_n_);
      return g;
    }
    case Family::SL: return bruhat::sample_sl(*this, rng);
    case Family::SU3: return bruhat::su3_uniform(*this, rng);
    case Family::Sp4: return sp4_random(rng);
  }
  return identity();
}

}  // namespace cayley
