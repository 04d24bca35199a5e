#pragma once

#include <string>
#include <vector>

#include "dmlab/matrix.hpp"
#include "dmlab/puiseux.hpp"

namespace dmlab {

// Element of the Tate algebra, truncated in t: ascending coefficients
// c[i]*t^i, trailing exact-zero coefficients trimmed. Retained t-degrees are
// exact as far as their scalar floors go; degrees beyond the truncation are
// simply not tracked (products never leak into lower degrees). The empty
// value is the zero series.
struct TatePoly {
  std::vector<Puiseux> c;

  long long deg() const { return (long long)c.size() - 1; }
  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  bool is_exact_zero() const { return c.empty(); }
};

TatePoly tp_zero();
TatePoly tp_from_coeffs(std::vector<Puiseux> c);
TatePoly tp_const(const Puiseux& x);
TatePoly tp_monomial(const Puiseux& coeff, size_t d);
TatePoly tp_t(const ScalarField& F);
// t - x as a degree-1 polynomial
TatePoly tp_t_minus(const Puiseux& x);

Puiseux tp_coeff(const TatePoly& f, size_t i);  // zero beyond the truncation

TatePoly tp_add(const TatePoly& x, const TatePoly& y);
TatePoly tp_sub(const TatePoly& x, const TatePoly& y);
TatePoly tp_neg(const TatePoly& x);
TatePoly tp_mul(const TatePoly& x, const TatePoly& y);  // exact in t
// product with t-degrees above nt discarded
TatePoly tp_mul_cap(const TatePoly& x, const TatePoly& y, long long nt);
TatePoly tp_scale(const TatePoly& x, const Puiseux& s);
TatePoly tp_twist(const TatePoly& x, long long j);  // coefficient-wise, t fixed
TatePoly tp_truncate_deg(const TatePoly& x, long long nt);
TatePoly tp_truncate_floor(const TatePoly& x, const Rat& fl);

// Gauss norm: sup of coefficient norms (multiplicative).
LogQ tp_norm(const TatePoly& x);

// Inverse of a unit, t-adically, up to degree nt. The t-free coefficient must
// have invertible lead; work_floor feeds its series inversion.
TatePoly tp_inv(const TatePoly& x, long long nt,
                std::optional<Rat> work_floor = std::nullopt);

// Sum of c_i * at^i. With series_tail (the default) the term norms must
// decay past their peak; the norm of the last retained term is certified as
// a tail bound and stamped into the result floor. Lack of certifiable decay
// is a Divergence error. series_tail = false evaluates a plain polynomial.
Puiseux tp_eval(const TatePoly& f, const Puiseux& at, bool series_tail = true);

std::string tp_str(const TatePoly& f);

inline TatePoly operator+(const TatePoly& x, const TatePoly& y) { return tp_add(x, y); }
inline TatePoly operator-(const TatePoly& x, const TatePoly& y) { return tp_sub(x, y); }
inline TatePoly operator*(const TatePoly& x, const TatePoly& y) { return tp_mul(x, y); }
inline TatePoly operator-(const TatePoly& x) { return tp_neg(x); }

// Matrices over the Tate algebra.
using TMat = Mat<TatePoly>;

TMat tmat_from_const(const Mat<Puiseux>& m);
Mat<Puiseux> tmat_coeff_slice(const TMat& m, size_t i);
TMat tmat_mul_cap(const TMat& x, const TMat& y, long long nt);
TMat tmat_twist(const TMat& x, long long j);
TMat tmat_truncate_floor(const TMat& x, const Rat& fl);
LogQ tmat_norm(const TMat& x);
bool tmat_is_zero(const TMat& x);

// t-adic inverse up to degree nt: N_0 inverts the t-free slice (norm-pivoted
// Gauss), then N_k = -N_0 * sum_{i=1..k} M_i N_{k-i}.
TMat tmat_inv(const TMat& m, long long nt,
              std::optional<Rat> work_floor = std::nullopt);

}  // namespace dmlab
