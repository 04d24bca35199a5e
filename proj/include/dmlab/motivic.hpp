#pragma once

#include <optional>
#include <vector>

#include "dmlab/drinfeld.hpp"

namespace dmlab {

// Images of the twisted powers under the rank-r motive identification: row n
// is the width-r vector of t-polynomials standing for the n-th twisted power,
// generated by the companion recursion row_{n+1} = twist(row_n, 1) * Phi^tr.
// Writing n = s*r + j, the pivot of row n is the t^s coefficient of
// coordinate r-j (1-based); it is a single constant from the prime-q subfield
// and is cached in lead_unit for the peel.
struct MotiveRows {
  DrinfeldModule mod;
  size_t n_max = 0;
  std::optional<Rat> window;  // relative depth kept when a coefficient is cut
  std::vector<std::vector<TatePoly>> rows;
  std::vector<uint32_t> lead_unit;
};

// Rows 0..n_max. The identification divides by k_r, so k_r must lie in the
// prime-q subfield (Domain error otherwise). When window is set, any row
// coefficient whose term count grows past an internal cap is truncated to
// floor = lead - window; small rows stay exact.
MotiveRows build_motive_rows(const DrinfeldModule& mod, size_t n_max,
                             std::optional<Rat> window = std::nullopt);

// Weight of the n-th coefficient in the twisted-series norm:
// log_q |a| + q^n * q^(r-1)/(q^r - 1). None for zero-to-precision a.
LogQ motive_weight(const DrinfeldModule& mod, const Puiseux& a, size_t n);

// Forward map: sum_n a_n k_r^{-1} row_n. The nonzero weights must decrease
// strictly past their peak and the peak may not sit on the last nonzero
// coefficient (Domain error): that is what finite data can witness of the
// required weight decay. The Gauss norm of the result is checked against the
// peak weight.
std::vector<TatePoly> varphi_forward(const MotiveRows& rows,
                                     const std::vector<Puiseux>& a);

// Inverse by descending peel: for n = n_max..0 with n = s*r + j, read the
// t^s coefficient of coordinate r-j, divide by the cached unit, record a_n
// and subtract a_n k_r^{-1} row_n. Rows below n carry nothing at that slot,
// so recovery is exact. NotInImage when the residual is above floor (input
// degrees beyond the peel range) or the recovered weights fail the decay
// certificate of the forward map.
std::vector<Puiseux> varphi_inverse(const MotiveRows& rows,
                                    std::vector<TatePoly> g);

// Evaluated inverse: sum_n a_n z^(q^n) for the recovered coefficients.
Puiseux mellin_value(const MotiveRows& rows, const std::vector<TatePoly>& g,
                     const Puiseux& z, bool series_tail = true);

// Structural laws of the generated rows, counted per violation: pivot degree
// s with a prime-subfield unit lead; coordinate degrees weakly ordered below
// the pivot index and strictly above it; per-coefficient norm exponent at
// t^nu at most (q^n - q^(nu*r+j))/(q^r - 1); row Gauss norm at most
// (q^(n+r-1) - q^(r-1))/(q^r - 1) and exactly q^j (q^(s r) - 1)/(q^r - 1).
struct RowLawReport {
  size_t rows_checked = 0;
  size_t degree_violations = 0;
  size_t ordering_violations = 0;
  size_t coeff_norm_violations = 0;
  size_t row_norm_violations = 0;
  size_t exact_norm_violations = 0;
  bool pass() const {
    return degree_violations == 0 && ordering_violations == 0 &&
           coeff_norm_violations == 0 && row_norm_violations == 0 &&
           exact_norm_violations == 0;
  }
};
RowLawReport row_law_report(const MotiveRows& rows);

// Entire-image decay: with cprime the peak weight of the preimage
// coefficients, every t^s coefficient of the image row must have norm
// exponent at most cprime - q^(s r)/(q^r - 1).
struct ImageDecayReport {
  Rat cprime{0};
  size_t checked = 0;
  size_t violations = 0;
  bool pass() const { return violations == 0; }
};
ImageDecayReport image_decay_check(const MotiveRows& rows,
                                   const std::vector<Puiseux>& a,
                                   const std::vector<TatePoly>& g);

// Verifier for the log formula. Part one: with R = pibar (Psi^tr)^(-1) and
// pibar recovered through the residue route, (t-theta)*forward(betas) + R
// must vanish to precision in every t-degree up to deg_cap. Part two: divide
// by theta - t as the geometric t-series, peel the quotient back and compare
// its evaluation at each z against the direct series sum beta_n z^(q^n).
struct LogFormulaReport {
  std::vector<Puiseux> pi_row;
  LogQ cleared_residual;
  bool cleared_ok = false;
  std::vector<Puiseux> z_values;
  std::vector<Puiseux> direct_values;
  std::vector<LogQ> z_residuals;
  bool z_ok = false;
  bool pass() const { return cleared_ok && z_ok; }
};
LogFormulaReport verify_log_formula(const PeriodPackage& pkg,
                                    const MotiveRows& rows,
                                    const std::vector<Puiseux>& zs,
                                    long long deg_cap = 10);

}  // namespace dmlab
