#pragma once

#include <optional>
#include <vector>

#include "dmlab/drinfeld.hpp"

namespace dmlab {

// Tensor twist of a rank-r module by the k-th Carlitz power: dimension
// d = rk+1, with theta acting by theta*Id + N + A1*tau. N is the offset-r
// superdiagonal (nilpotent of order k+1), A1 carries a unit subdiagonal
// block followed by the coefficient row (k_1..k_r, 0..0).
struct TensorModule {
  DrinfeldModule mod;
  uint32_t k = 0;
  uint32_t d() const { return mod.r() * k + 1; }
};

TensorModule make_tensor(const DrinfeldModule& mod, uint32_t k);

Mat<Puiseux> tensor_nilpotent(const TensorModule& tm);
Mat<Puiseux> tensor_tau_coeff(const TensorModule& tm);
SkewPoly<Mat<Puiseux>> tensor_theta_op(const TensorModule& tm);

// Partner of a rank-2 module with constant coefficients: theta maps to
// theta - k_1 k_2^{-1} tau + k_2^{-1} tau^2. The L-value of the original
// module appears through logarithm coordinates of the partner's twists.
DrinfeldModule partner_module(const DrinfeldModule& mod);

// Logarithm / exponential coefficient matrices P_0..P_n (P_0 = Id). Each
// P_n solves a Sylvester identity against theta^(q^n) Id + N; the resolvent
// is the terminating nested-commutator series in N, and every solution is
// verified against the identity it came from. Entries are floored at
// work_floor.
std::vector<Mat<Puiseux>> tensor_log_coeffs(const TensorModule& tm, size_t n,
                                            const Rat& work_floor);
std::vector<Mat<Puiseux>> tensor_exp_coeffs(const TensorModule& tm, size_t n,
                                            const Rat& work_floor);

// Proven decay bound for the last r rows of column ell of the n-th
// logarithm coefficient: log_q of the sup norm is at most
//   -q^n (u+1 + q^j/(q^r-1) + k/(q-1)) + q^r/(q^r-1) + kq/(q-1)
// for ell = ru+j+1, and with u+1 + q^j/(q^r-1) replaced by q^r/(q^r-1) for
// ell = 1.
Rat tensor_log_tail_bound(const TensorModule& tm, size_t n, uint32_t ell);

// Domain predicate for the coordinate z_ell of the logarithm argument:
// log_q |z_1| < q^r/(q^r-1) + k/(q-1) and
// log_q |z_{ru+j+1}| < u+1 + q^j/(q^r-1) + k/(q-1).
bool tensor_log_domain(const TensorModule& tm, const std::vector<Puiseux>& z);

// Value of the i-th coordinate (1-based) of the logarithm series at z:
// sum_n (P_n z^(q^n))_i, with the tail certified by the decay bound.
Puiseux tensor_log_value(const TensorModule& tm,
                         const std::vector<Mat<Puiseux>>& P,
                         const std::vector<Puiseux>& z, uint32_t coord);

// Images of the twisted basis streams under the width-r identification of
// the tensor motive. Stream (n, ell) is a width-r vector of t-polynomials;
// its pivot (degree, coordinate) is read off the degree law, carries an
// exact scalar unit, and the pivots over ascending (n, ell) walk the
// (degree, coordinate) grid in consecutive lexicographic steps. That walk
// is what makes the descending peel in the inverse triangular.
struct TensorRows {
  TensorModule tm;
  size_t n_max = 0;
  std::optional<Rat> window;
  // rows[n][ell-1] is the width-r image of the ell-th stream at twist n.
  std::vector<std::vector<std::vector<TatePoly>>> rows;
  std::vector<std::vector<long long>> pivot_deg;
  std::vector<std::vector<uint32_t>> pivot_coord;  // 1..r
  std::vector<std::vector<uint32_t>> pivot_unit;   // exact field scalar
  // fund[m][j-1] is the j-th row of the m-fold twisted companion product,
  // kept for the norm laws.
  std::vector<std::vector<std::vector<TatePoly>>> fund;
};

TensorRows build_tensor_rows(const TensorModule& tm, size_t n_max,
                             std::optional<Rat> window = std::nullopt);

// Weight of the coefficient of stream (n, ell) in the domain norm:
// log_q |a| + q^n (q^(r-1)/(q^r-1) + u + k/(q-1)) with u = (ell-1) div r.
// None for zero-to-precision a.
LogQ tensor_weight(const TensorModule& tm, const Puiseux& a, size_t n,
                   uint32_t ell);

// Forward map: sum over streams of a[n][ell-1] times the stream image. The
// per-stream weights must decay strictly past their peak, with the peak not
// on the last nonzero coefficient (Domain error otherwise); the Gauss norm
// of the result is checked against the peak weight.
std::vector<TatePoly> varphi_tens_forward(
    const TensorRows& rows, const std::vector<std::vector<Puiseux>>& a);

// Inverse by descending peel over the pivot walk: the pivot slot of each
// stream determines its coefficient, whose multiple of the stream row is
// subtracted before any lexicographically smaller slot is read. NotInImage
// when the residual stays above floor or the recovered weights fail the
// decay certificate.
std::vector<std::vector<Puiseux>> varphi_tens_inverse(const TensorRows& rows,
                                                      std::vector<TatePoly> g);

// Evaluated inverse: sum over streams of a[n][ell-1] z_ell^(q^n).
Puiseux mellin_tens_value(const TensorRows& rows, std::vector<TatePoly> g,
                          const std::vector<Puiseux>& z);

// Structural laws of the stream images, counted per violation: pivot
// degree, exact unit and coordinate ordering; per-coefficient norm law (the
// tightest admissible decomposition of each t-degree); Gauss-norm bound per
// stream; and the norm law of the fundamental companion-product rows.
struct TensorRowLawReport {
  size_t streams_checked = 0;
  size_t degree_violations = 0;
  size_t ordering_violations = 0;
  size_t coeff_norm_violations = 0;
  size_t stream_norm_violations = 0;
  size_t fundamental_norm_violations = 0;
  bool pass() const {
    return degree_violations == 0 && ordering_violations == 0 &&
           coeff_norm_violations == 0 && stream_norm_violations == 0 &&
           fundamental_norm_violations == 0;
  }
};
TensorRowLawReport tensor_row_law_report(const TensorRows& rows);

// Product of inverse-twisted companion matrices on the sigma side,
// (Phi^-1)^(n) ... (Phi^-1)^(1); all twists are at least one, so entries
// are honest Tate series. Its first column carries the closed forms of the
// logarithm coefficients of the base module.
TMat dual_side_product(const PeriodPackage& pkg, size_t n, long long n_t,
                       const Rat& work_floor);

// Exact basis change aligning the dual tensor basis with the base-module
// one: first column is the last unit vector, column j >= 2 holds the
// (1-j)-twisted coefficients k_(i+j-1) above the antidiagonal.
Mat<Puiseux> tensor_basis_change(const DrinfeldModule& mod);

// Lie-side coordinates of an element given by its width-r coefficient
// vector against the dual tensor basis: each component is expanded in
// powers of (t - theta) by synthetic division and the digits up to k fill
// the coordinates; higher powers vanish. Digits are stamped with the tail
// bound of the dropped t-range.
std::vector<Puiseux> tensor_lie_coordinates(const TensorModule& tm,
                                            const std::vector<TatePoly>& R);

// Identity collapse of the conjugated transition products: for each n in
// [n_lo, n_hi] the product of the n-twisted inverse of U = V^tr B^(1), the
// n-twisted transpose of the exact basis change, the (n+1)-twisted inverse
// transpose of its (-1)-twist, and the n-twisted U must be the identity to
// precision. dev records the gap per n.
struct TensorBasisReport {
  std::vector<size_t> n_values;
  std::vector<LogQ> dev;
  bool pass_all = false;
  bool pass() const { return pass_all; }
};
TensorBasisReport tensor_basis_identity_check(const PeriodPackage& pkg,
                                              size_t n_lo, size_t n_hi);

// Quasi-periodic values F_ell(lambda_i) for 1 <= ell <= r-1, where F_ell is
// the entire solution of F(theta z) - theta F(z) = exp(z)^(q^ell) without
// linear term. Route one sums the defining series with per-term deepened
// floors; route two evaluates the ell-twisted generating function of the
// period at theta. Both are kept along with their disagreement and the
// residual of the functional equation at the periods.
struct QuasiPeriods {
  std::vector<std::vector<Puiseux>> series_route;  // [ell-1][i]
  std::vector<std::vector<Puiseux>> agf_route;     // [ell-1][i]
  LogQ disagreement;
  LogQ functional_residual;
};
QuasiPeriods quasi_periods(const PeriodPackage& pkg, const Rat& floor);

// Verifier for the tensor logarithm formula. For each coordinate index
// d - (j-1), j = 1..r: the cleared identity multiplies the forward image of
// the coordinate stream of the logarithm by (theta - t) (j = 1) or
// (t - theta) (j >= 2) and by the k-th power of the Carlitz theta function,
// and compares against pi^k times the period row (j = 1) or the
// quasi-period row (j >= 2), both multiplied by the (-1)-twisted transposed
// trivialization. The z part divides back by the cleared factor as a Tate
// series, peels, and compares the evaluation at each z with the direct
// coordinate of the logarithm series.
struct TensorTheoremReport {
  std::vector<LogQ> cleared_residual;  // per j = 1..r
  bool cleared_ok = false;
  std::vector<Puiseux> z_mellin, z_direct;  // flattened over (j, z)
  std::vector<LogQ> z_residuals;
  bool z_ok = false;
  bool pass() const { return cleared_ok && z_ok; }
};
TensorTheoremReport verify_tensor_theorem(
    const PeriodPackage& pkg, const TensorRows& rows,
    const std::vector<std::vector<Puiseux>>& zs, long long deg_cap = 10);

// Special-value determinant for a rank-2 module with prime-field
// coefficients: the 2x2 matrix of partner-twist logarithm coordinates
// 2k, 2k+1 at the unit vectors with the same indices. Its determinant
// equals the L-value of the module at k+1; the comparison itself lives
// with the L-value layer.
struct TensorDeterminant {
  DrinfeldModule partner;
  Mat<Puiseux> entries;
  Puiseux det_value;
};
TensorDeterminant tensor_special_determinant(const DrinfeldModule& mod,
                                             uint32_t k, size_t n_tau,
                                             const Rat& floor);

}  // namespace dmlab
