#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dmlab/skew.hpp"
#include "dmlab/tate.hpp"

namespace dmlab {

// Rank-r module datum: the image of theta is theta + k_1 X + ... + k_r X^r
// in the twisted polynomial ring, k_r nonzero. Coefficients live in the
// working field F.
struct DrinfeldModule {
  const ScalarField* F = nullptr;
  std::vector<uint32_t> k;  // k_1..k_r
  uint32_t r() const { return (uint32_t)k.size(); }
};

DrinfeldModule make_drinfeld(const ScalarField& F, std::vector<uint32_t> k);

// theta + k_1 X + ... + k_r X^r as a finite twisted operator.
SkewPoly<Puiseux> phi_theta_op(const DrinfeldModule& mod);

// Exponential / logarithm coefficient sequences e_0..e_n / b_0..b_n (e_0 =
// b_0 = 1), computed by the defining recurrences, floored at work_floor.
std::vector<Puiseux> exp_coeffs(const DrinfeldModule& mod, size_t n,
                                const Rat& work_floor);
std::vector<Puiseux> log_coeffs(const DrinfeldModule& mod, size_t n,
                                const Rat& work_floor);

// Proven decay bound: log_q |b_n| <= (q^r - q^(n+r))/(q^r - 1).
Rat log_coeff_bound(const DrinfeldModule& mod, size_t n);

// Series built from a coefficient list: sum c_m z^(q^m).
Puiseux twisted_series_eval(const std::vector<Puiseux>& coeffs, const Puiseux& z,
                            bool series_tail = true);

// Closed form of the n-th logarithm coefficient as a ratio of polynomials in
// t: (numerator, denominator) with denominator prod_{m=1..n} (t-theta^(q^m)).
// The numerator enumerates the tilings of an n-strip by tiles of length <= r.
std::pair<TatePoly, TatePoly> bn_closed_form(const DrinfeldModule& mod, size_t n);

// Basis of the theta-torsion built from a canonical (q^r-1)-st root of
// -1/k_r, refined to the working floor; B is the Moore matrix of the basis
// and det its Moore determinant.
struct TorsionBasis {
  std::vector<Puiseux> xi;
  Mat<Puiseux> B;
  Puiseux det;
};
TorsionBasis theta_torsion_basis(const DrinfeldModule& mod, const Rat& floor);

// Periods, generating functions and both trivializations, with the residual
// norms of every functional identity that ties them together.
struct PeriodPackage {
  DrinfeldModule mod;
  long long n_t = 0;
  size_t n_tau = 0;
  Rat floor{0};

  TorsionBasis torsion;
  std::vector<Puiseux> betas;   // logarithm coefficients
  std::vector<Puiseux> exps;    // exponential coefficients
  std::vector<Puiseux> lambda;  // period basis

  std::vector<TatePoly> f;  // generating functions of the periods
  Mat<Puiseux> V;           // anti-triangular change of basis
  TMat Theta, Phi;          // companion matrices (tau / sigma side)
  TMat Upsilon, Psi;        // trivializations
  TMat Fprod;               // transition matrix B^-1 Theta^-1 B^(1)

  std::vector<LogQ> pi_vs_upsilon;  // |Pi_m - Upsilon| per product step
  LogQ agf_residual;                // (t-theta)f_i - sum k_j f_i^(j)
  LogQ upsilon_residual;            // Upsilon^(1) - Theta*Upsilon
  LogQ psi_residual;                // Psi^(-1) - Phi*Psi
  LogQ basis_change_residual;       // V^(-1)Phi - Theta^tr V (exact zero)
  LogQ t0_residual;                 // t-free slice of Upsilon vs B
};

PeriodPackage periods_and_agf(const DrinfeldModule& mod, long long n_t,
                              size_t n_tau, const Rat& floor);

// Value at t=theta of (t-theta)f for an f satisfying the generating-function
// identity: sum_j k_j * (f^(j) at theta). For a period generating function
// this recovers minus the period.
Puiseux residue_at_theta(const DrinfeldModule& mod, const TatePoly& f);

// Limit checks for the transition products at t=theta: dev_* report the gap
// from the identity matrix.
struct AlphaBetaReport {
  LogQ beta_dev;                  // finite sum that should be Id exactly
  std::vector<size_t> n_values;
  std::vector<LogQ> alpha_dev;    // |alpha_n(theta) - Id| per n
  std::vector<LogQ> ftilde_norm;  // |F^(n)(theta) - Id|, bound q^(1-q^n)
  bool alpha_strictly_decreasing = false;
};
AlphaBetaReport alpha_beta_check(const PeriodPackage& pkg, size_t n_lo,
                                 size_t n_hi);

// Transition matrix at t=theta, twisted by i >= 1 (the untwisted one is
// singular there): (B^(i))^-1 (Theta^(i)(theta))^-1 B^(i+1).
Mat<Puiseux> transition_at_theta(const PeriodPackage& pkg, size_t i);

// Carlitz-module specials: the period-normalized theta function, its inverse
// twist, and the period itself, mutually consistent by construction choices.
struct CarlitzPack {
  TatePoly omega;   // infinite-product theta function
  TatePoly Omega;   // 1/omega^(1)
  Puiseux pitilde;  // fundamental period
};
CarlitzPack carlitz_specials(const ScalarField& F, long long n_t, const Rat& floor);

// Exact finite products: S_i = (t-theta)...(t-theta^(q^(i-1))) and
// L_i = (theta-theta^(q^i))...(theta-theta^q), with S_0 = L_0 = 1.
TatePoly carlitz_S(const ScalarField& F, size_t i);
Puiseux carlitz_L(const ScalarField& F, size_t i);

// Goss-style zeta value: sum over monic a of degree <= D of a^(-n), with the
// dropped blocks certified below q^(-(D+1)n).
Puiseux zeta_A(const ScalarField& F, uint32_t n, uint32_t D);

}  // namespace dmlab
