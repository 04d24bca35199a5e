#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmlab/fq.hpp"
#include "dmlab/rat.hpp"

namespace dmlab {

// Truncated Puiseux series with exact rational exponents: finitely many terms
// c[i]*theta^((lo + i*st)/den) plus an optional precision floor. A floor f
// means the element is only known modulo terms of exponent <= f; floor absent
// means the element is exact. Invariants:
//   - c has nonzero first and last entry (interior zeros allowed),
//   - every retained exponent is strictly above the floor,
//   - canonical lattice: single term -> st = 1 and lo/den reduced; several
//     terms -> the gcd of the support indices is folded into st, then
//     (den, lo, st) carry no common factor.
// A default-constructed value (F null, no terms, no floor) is the absorbing
// exact zero, usable as additive identity for any field.
struct Puiseux {
  const ScalarField* F = nullptr;
  long long den = 1;
  long long lo = 0;
  long long st = 1;
  std::vector<uint32_t> c;
  std::optional<Rat> floor_;

  bool is_zero() const { return c.empty(); }  // zero to working precision
  bool is_exact_zero() const { return c.empty() && !floor_; }
  bool is_exact() const { return !floor_; }
  size_t nterms() const { return c.size(); }

  Rat exp_at(size_t i) const { return Rat(BigInt(lo) + BigInt(i) * st, BigInt(den)); }
  Rat lead_exp() const { return exp_at(c.size() - 1); }
  // log_q of the norm; none when there are no terms (zero to precision).
  LogQ norm_logq() const {
    if (c.empty()) return std::nullopt;
    return lead_exp();
  }
};

// Constructors.
Puiseux pz_zero();
Puiseux pz_zero_prec(const ScalarField* F, const Rat& floor);
Puiseux pz_term(const ScalarField& F, uint32_t coeff, const Rat& e,
                std::optional<Rat> floor = std::nullopt);
Puiseux pz_one(const ScalarField& F);
Puiseux pz_theta(const ScalarField& F);
Puiseux pz_from_field(const ScalarField& F, uint32_t idx);

// Arithmetic. Floors propagate: add takes the max floor, mul takes
// max(floor_x + lead_y, floor_y + lead_x) reading lead as the floor for
// term-free operands, inv maps floor to floor - 2*lead.
Puiseux pz_add(const Puiseux& x, const Puiseux& y);
Puiseux pz_sub(const Puiseux& x, const Puiseux& y);
Puiseux pz_neg(const Puiseux& x);
Puiseux pz_mul(const Puiseux& x, const Puiseux& y);
Puiseux pz_scale(const Puiseux& x, uint32_t k);  // by a field element

// Inverse. Exact single-term input inverts exactly. A multi-term input needs
// a floor to stop at: its own floor if present, else work_floor; an exact
// multi-term input without work_floor is a Precision error, as is inverting a
// term-free element with a floor (zero to precision). Exact zero is
// DivByZero.
Puiseux pz_inv(const Puiseux& x, std::optional<Rat> work_floor = std::nullopt);
Puiseux pz_pow(const Puiseux& x, long long m,
               std::optional<Rat> work_floor = std::nullopt);
Puiseux pz_div(const Puiseux& x, const Puiseux& y,
               std::optional<Rat> work_floor = std::nullopt);

// x^(q^j) for signed j: exponents scale by q^j, coefficients Frobenius-twist.
// Exact on terms; the floor scales by q^j too (improving it when j > 0).
Puiseux pz_twist(const Puiseux& x, long long j);

// Drop terms with exponent <= floor and stamp max(old floor, floor).
Puiseux pz_truncate(const Puiseux& x, const Rat& floor);

// Representation equality (field, lattice, coefficients, floor).
bool pz_eq(const Puiseux& x, const Puiseux& y);

// Coefficient at an exact exponent (0 when absent or off-lattice).
uint32_t pz_coeff(const Puiseux& x, const Rat& e);

// Terms in descending exponent order, for display and serialization.
std::vector<std::pair<Rat, uint32_t>> pz_terms_desc(const Puiseux& x);

std::string pz_str(const Puiseux& x);

inline Puiseux operator+(const Puiseux& x, const Puiseux& y) { return pz_add(x, y); }
inline Puiseux operator-(const Puiseux& x, const Puiseux& y) { return pz_sub(x, y); }
inline Puiseux operator*(const Puiseux& x, const Puiseux& y) { return pz_mul(x, y); }
inline Puiseux operator-(const Puiseux& x) { return pz_neg(x); }

}  // namespace dmlab
