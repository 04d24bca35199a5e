#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dmlab/error.hpp"
#include "dmlab/rat.hpp"

namespace dmlab {

// F_{q^s} with q = p^a, realized as F_p[x]/(modulus). Elements are indices in
// [0, p^(a*s)): the index's base-p digits are the coordinates in the power
// basis of the modulus root (constant coordinate least significant). That
// fixed coordinate ordering is the canonical order used for every "smallest"
// choice (modulus, generator, roots).
class ScalarField {
public:
  uint32_t p = 0, a = 0, s = 0;
  uint32_t deg = 0;   // a*s
  uint64_t n = 0;     // p^deg
  uint64_t q = 0;     // p^a
  std::vector<uint32_t> modulus;  // length deg+1, monic
  uint32_t gen = 0;               // smallest primitive element

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }

  uint32_t add(uint32_t x, uint32_t y) const;
  uint32_t sub(uint32_t x, uint32_t y) const { return add(x, neg(y)); }
  uint32_t neg(uint32_t x) const { return neg_tab_[x]; }
  uint32_t mul(uint32_t x, uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    uint64_t e = uint64_t(dlog_[x]) + dlog_[y];
    if (e >= n - 1) e -= n - 1;
    return alog_[e];
  }
  uint32_t inv(uint32_t x) const {
    if (x == 0) fail(ErrKind::DivByZero, "inverse of zero field element");
    uint32_t e = dlog_[x];
    return alog_[e == 0 ? 0 : n - 1 - e];
  }
  uint32_t div(uint32_t x, uint32_t y) const { return mul(x, inv(y)); }

  // x^e for signed/huge exponents (reduced mod n-1 on the unit group).
  uint32_t pow(uint32_t x, const BigInt& e) const;

  // x^(p^j); j reduced mod deg. Negative j allowed.
  uint32_t frob_p(uint32_t x, long long j) const {
    long long m = j % deg;
    if (m < 0) m += deg;
    return frob_tab_[size_t(m) * n + x];
  }
  // x^(q^j) = x^(p^(a*j)).
  uint32_t frob_q(uint32_t x, long long j) const { return frob_p(x, a * j); }

  uint32_t from_int(long long m) const {
    long long r = m % (long long)p;
    if (r < 0) r += (long long)p;
    return uint32_t(r);  // prime-subfield elements are the digit-0 indices
  }

  // Multiplicative order; x must be nonzero.
  uint64_t elem_order(uint32_t x) const;

  // Coordinates over F_p (length deg, constant first).
  std::vector<uint32_t> coords(uint32_t x) const;
  uint32_t from_coords(const std::vector<uint32_t>& c) const;
  std::string elem_str(uint32_t x) const;

  // Subfield of size Q (requires Q-1 | n-1 and Q = p^m with m | deg):
  bool in_subfield(uint32_t x, uint64_t Q) const;
  std::vector<uint32_t> subfield_elems(uint64_t Q) const;
  // Smallest element of multiplicative order exactly Q-1.
  uint32_t subfield_gen(uint64_t Q) const;

  // Canonical embedding of a compatible smaller field (same p, small.n = q':
  // q'-1 | n-1, deg' | deg): the small field's generator maps to the smallest
  // root of its minimal polynomial here.
  uint32_t embed(const ScalarField& small, uint32_t x) const;

  uint32_t dlog(uint32_t x) const {
    if (x == 0) fail(ErrKind::DivByZero, "dlog of zero");
    return dlog_[x];
  }
  uint32_t alog(uint64_t e) const { return alog_[e % (n - 1)]; }

private:
  friend ScalarField field_build(uint32_t, uint32_t, uint32_t, uint64_t);
  std::vector<uint32_t> dlog_, alog_, neg_tab_, frob_tab_, add_tab_;
  std::vector<uint8_t> digits_;
  bool small_add_ = false;
};

// Deterministic construction: lexicographically smallest irreducible modulus
// (candidates ordered by integer code of non-leading coefficients), smallest
// primitive generator.
ScalarField field_build(uint32_t p, uint32_t a, uint32_t s,
                        uint64_t enum_bound = (uint64_t(1) << 16));

struct RootSearch {
  bool ok = false;
  uint32_t root = 0;  // canonical (smallest index) solution when ok
  int min_s = 0;      // minimal sufficient extension degree otherwise
};

// Canonical x with x^nn = a_idx, or the minimal s that would admit one.
RootSearch scalar_root_search(const ScalarField& F, uint32_t a_idx, uint64_t nn,
                              int s_cap = 64);

// Throwing wrapper per the operation contract (a != 0 required).
uint32_t scalar_root(const ScalarField& F, uint32_t a_idx, uint64_t nn);

// Smallest s such that F_{q^s} (q = p^a) contains F_{q^r}, a (q-1)-st root of
// -1 and a (q^r-1)-st root of -1/k_r, where ord_m1 / ord_m1kr are the
// multiplicative orders of those two targets in F_q (1 when the target is 1).
// Pure integer arithmetic; no trial fields are built.
uint32_t choose_s(uint32_t p, uint32_t a, uint32_t r, uint64_t ord_m1,
                  uint64_t ord_m1kr, uint32_t s_cap = 64);

}  // namespace dmlab
