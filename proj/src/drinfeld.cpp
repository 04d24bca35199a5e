#include "dmlab/drinfeld.hpp"

#include <algorithm>
#include <string>

#include "dmlab/polyfq.hpp"

namespace dmlab {

namespace {

// Extra working depth below the requested floor; absorbs precision erosion
// from inverses and long products before results are re-stamped.
constexpr long long kMargin = 16;
constexpr int kMaxRefine = 200;
constexpr int kMaxProductSteps = 64;

Rat qpow_rat(const ScalarField& F, long long j) { return q_pow((long long)F.q, j); }

BigInt qpow_int(const ScalarField& F, uint64_t j) {
  BigInt b = 1, q = F.q;
  for (uint64_t i = 0; i < j; ++i) b *= q;
  return b;
}

// theta^(q^m) as an exact one-term series.
Puiseux theta_qm(const ScalarField& F, long long m) {
  return pz_term(F, 1, qpow_rat(F, m));
}

Puiseux divide_with_floor(const Puiseux& num, const Puiseux& div, const Rat& wf) {
  if (num.is_exact_zero()) return num;
  LogQ lead = num.norm_logq();
  if (!lead) {
    // zero to precision: the quotient is zero to floor(num) - |div|
    return pz_zero_prec(num.F, *num.floor_ - *div.norm_logq());
  }
  Puiseux dinv = pz_inv(div, wf - *lead);
  return pz_truncate(pz_mul(num, dinv), wf);
}

TMat tmat_sub(const TMat& x, const TMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    fail(ErrKind::Shape, "tmat_sub: dimension mismatch");
  TMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = tp_sub(x.a[i], y.a[i]);
  return r;
}

TMat tmat_transpose(const TMat& x) {
  TMat r(x.cols, x.rows);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

TMat tmat_identity(const ScalarField& F, size_t n) {
  TMat r(n, n);
  for (size_t i = 0; i < n; ++i) r(i, i) = tp_const(pz_one(F));
  return r;
}

Mat<Puiseux> outer_product(const std::vector<Puiseux>& u,
                           const std::vector<Puiseux>& v) {
  Mat<Puiseux> r(u.size(), v.size());
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r(i, j) = pz_mul(u[i], v[j]);
  return r;
}

}  // namespace

DrinfeldModule make_drinfeld(const ScalarField& F, std::vector<uint32_t> k) {
  if (k.empty()) fail(ErrKind::Shape, "drinfeld module: rank zero");
  for (uint32_t x : k)
    if (x >= F.n) fail(ErrKind::Domain, "drinfeld module: coefficient outside field");
  if (k.back() == 0) fail(ErrKind::Degenerate, "drinfeld module: top coefficient is zero");
  return DrinfeldModule{&F, std::move(k)};
}

SkewPoly<Puiseux> phi_theta_op(const DrinfeldModule& mod) {
  const ScalarField& F = *mod.F;
  std::vector<Puiseux> c;
  c.push_back(pz_theta(F));
  for (uint32_t x : mod.k) c.push_back(pz_from_field(F, x));
  return sk_make(SkewVar::Tau, std::move(c));
}

std::vector<Puiseux> exp_coeffs(const DrinfeldModule& mod, size_t n,
                                const Rat& work_floor) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  std::vector<Puiseux> e;
  e.push_back(pz_one(F));
  for (size_t m = 1; m <= n; ++m) {
    Puiseux rhs = pz_zero();
    for (size_t j = 1; j <= std::min<size_t>(m, r); ++j)
      rhs = pz_add(rhs, pz_scale(pz_twist(e[m - j], (long long)j), mod.k[j - 1]));
    Puiseux div = pz_sub(theta_qm(F, (long long)m), pz_theta(F));
    e.push_back(divide_with_floor(rhs, div, work_floor));
  }
  return e;
}

std::vector<Puiseux> log_coeffs(const DrinfeldModule& mod, size_t n,
                                const Rat& work_floor) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  std::vector<Puiseux> b;
  b.push_back(pz_one(F));
  for (size_t m = 1; m <= n; ++m) {
    Puiseux rhs = pz_zero();
    for (size_t j = 1; j <= std::min<size_t>(m, r); ++j) {
      uint32_t kj = F.frob_q(mod.k[j - 1], (long long)(m - j));
      rhs = pz_add(rhs, pz_scale(b[m - j], kj));
    }
    Puiseux div = pz_sub(pz_theta(F), theta_qm(F, (long long)m));
    b.push_back(divide_with_floor(rhs, div, work_floor));
  }
  return b;
}

Rat log_coeff_bound(const DrinfeldModule& mod, size_t n) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  BigInt qr = qpow_int(F, r), qnr = qpow_int(F, n + r);
  return Rat(qr - qnr, qr - 1);
}

Puiseux twisted_series_eval(const std::vector<Puiseux>& coeffs, const Puiseux& z,
                            bool series_tail) {
  return sk_eval(sk_make(SkewVar::Tau, coeffs), z, series_tail);
}

std::pair<TatePoly, TatePoly> bn_closed_form(const DrinfeldModule& mod, size_t n) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  TatePoly denom = tp_const(pz_one(F));
  for (size_t m = 1; m <= n; ++m)
    denom = tp_mul(denom, tp_t_minus(theta_qm(F, (long long)m)));

  TatePoly num = tp_zero();
  // end[m] marks m as a tile boundary (a partial sum of the composition)
  std::vector<char> end(n + 1, 0);
  auto emit = [&]() {
    uint32_t coeff = 1;
    size_t start = 0;
    for (size_t m = 1; m <= n; ++m) {
      if (!end[m]) continue;
      size_t size = m - start;  // tile [start, m)
      coeff = F.mul(coeff, F.frob_q(mod.k[size - 1], (long long)start));
      start = m;
    }
    TatePoly term = tp_const(pz_from_field(F, coeff));
    for (size_t m = 1; m <= n; ++m)
      if (!end[m]) term = tp_mul(term, tp_t_minus(theta_qm(F, (long long)m)));
    num = tp_add(num, term);
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    if (start == n) {
      emit();
      return;
    }
    for (size_t size = 1; size <= std::min<size_t>(r, n - start); ++size) {
      end[start + size] = 1;
      self(self, start + size);
      end[start + size] = 0;
    }
  };
  rec(rec, 0);
  return {num, denom};
}

TorsionBasis theta_torsion_basis(const DrinfeldModule& mod, const Rat& floor) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  if (r > 1 && F.s % r != 0)
    fail(ErrKind::Shape,
         "torsion basis: working field has no constant extension of degree " +
             std::to_string(r));
  uint64_t nn = 1;
  for (uint32_t i = 0; i < r; ++i) nn *= F.q;
  nn -= 1;  // q^r - 1

  uint32_t c = scalar_root(F, F.neg(F.inv(mod.k.back())), nn);
  std::vector<uint32_t> residues{c};
  if (r > 1) {
    uint32_t g = F.subfield_gen(nn + 1);
    for (uint32_t i = 1; i < r; ++i) residues.push_back(F.mul(residues.back(), g));
  }

  SkewPoly<Puiseux> op = phi_theta_op(mod);
  Puiseux theta_inv = pz_inv(pz_theta(F));
  Rat lead_exp(1, (long long)nn);

  TorsionBasis tb;
  for (uint32_t i = 0; i < r; ++i) {
    Puiseux z = pz_term(F, residues[i], lead_exp, floor);
    LogQ prev;
    bool first = true;
    for (int it = 0;; ++it) {
      Puiseux resid = sk_eval(op, z, false);
      if (resid.is_zero()) break;
      LogQ rn = resid.norm_logq();
      if (!first && !(*rn < *prev))
        fail(ErrKind::Internal, "torsion basis: refinement stalled, residual " +
                                    logq_str(rn) + " after " + logq_str(prev));
      prev = rn;
      first = false;
      z = pz_sub(z, pz_mul(resid, theta_inv));
      if (it >= kMaxRefine)
        fail(ErrKind::Internal, "torsion basis: refinement did not converge");
    }
    if (!z.norm_logq() || *z.norm_logq() != lead_exp)
      fail(ErrKind::Internal, "torsion basis: norm drifted from q^" + rat_str(lead_exp));
    tb.xi.push_back(z);
  }

  tb.B = Mat<Puiseux>(r, r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) tb.B(i, j) = pz_twist(tb.xi[j], i);

  PzRing R{&F};
  std::vector<Puiseux> flat(tb.B.a.begin(), tb.B.a.end());
  std::vector<Puiseux> cp = charpoly(R, flat, r);
  tb.det = (r % 2 == 0) ? cp[r] : pz_neg(cp[r]);
  return tb;
}

PeriodPackage periods_and_agf(const DrinfeldModule& mod, long long n_t,
                              size_t n_tau, const Rat& floor) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  if (n_t < 1) fail(ErrKind::Shape, "periods: need t-degree at least 1");
  Rat wf = floor - kMargin;

  PeriodPackage pkg;
  pkg.mod = mod;
  pkg.n_t = n_t;
  pkg.n_tau = n_tau;
  pkg.floor = floor;
  pkg.torsion = theta_torsion_basis(mod, wf);

  BigInt qr1 = qpow_int(F, r) - 1;

  // Cut for the period series: first n whose summand bound (coefficient
  // decay plus the twisted-norm growth of the basis, plus 1 for the leading
  // theta factor) drops below the working floor.
  size_t cut = 1;
  for (;; ++cut) {
    Rat bnd = log_coeff_bound(mod, cut) + Rat(qpow_int(F, cut), qr1) + 1;
    if (bnd <= wf) break;
    if (cut > 4000) fail(ErrKind::Internal, "periods: series cut not found");
  }
  Rat wbeta = wf - Rat(qpow_int(F, cut), qr1) - 2;
  std::vector<Puiseux> betas_deep = log_coeffs(mod, cut, wbeta);

  pkg.betas = log_coeffs(mod, n_tau, wf);
  pkg.exps = exp_coeffs(mod, n_tau, wf - 2);

  Puiseux theta = pz_theta(F);
  Puiseux theta_inv = pz_inv(theta);
  for (uint32_t i = 0; i < r; ++i) {
    Puiseux acc = pz_zero();
    for (size_t m = 0; m < cut; ++m)
      acc = pz_add(acc, pz_mul(betas_deep[m], pz_twist(pkg.torsion.xi[i], (long long)m)));
    pkg.lambda.push_back(pz_truncate(pz_mul(theta, acc), wf));
  }

  // Generating functions: coefficient 0 is the torsion basis itself (the
  // series for exp(lambda/theta) converges back to it but with |z| > 1 the
  // partial sums carry no usable tail bound); higher coefficients evaluate
  // the exponential at lambda/theta^(n+1), inside the open unit disk.
  for (uint32_t i = 0; i < r; ++i) {
    std::vector<Puiseux> fc;
    fc.push_back(pkg.torsion.xi[i]);
    Puiseux zpow = theta_inv;  // theta^{-(n+1)}
    for (long long nn = 1; nn <= n_t; ++nn) {
      zpow = pz_mul(zpow, theta_inv);
      fc.push_back(twisted_series_eval(pkg.exps, pz_mul(pkg.lambda[i], zpow)));
    }
    pkg.f.push_back(tp_from_coeffs(std::move(fc)));
  }

  // Companion matrices and the basis-change V.
  uint32_t krinv = F.inv(mod.k.back());
  pkg.Theta = TMat(r, r);
  pkg.Phi = TMat(r, r);
  for (uint32_t i = 0; i + 1 < r; ++i) {
    pkg.Theta(i, i + 1) = tp_const(pz_one(F));
    pkg.Phi(i, i + 1) = tp_const(pz_one(F));
  }
  pkg.Theta(r - 1, 0) = tp_scale(tp_t_minus(theta), pz_from_field(F, krinv));
  uint32_t krinv_m = F.inv(F.frob_q(mod.k.back(), -(long long)r));
  pkg.Phi(r - 1, 0) = tp_scale(tp_t_minus(theta), pz_from_field(F, krinv_m));
  for (uint32_t j = 1; j < r; ++j) {
    pkg.Theta(r - 1, j) =
        tp_const(pz_from_field(F, F.neg(F.mul(mod.k[j - 1], krinv))));
    uint32_t kj_m = F.frob_q(mod.k[j - 1], -(long long)j);
    pkg.Phi(r - 1, j) = tp_const(pz_from_field(F, F.neg(F.mul(kj_m, krinv_m))));
  }

  pkg.V = Mat<Puiseux>(r, r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j)
      pkg.V(i, j) = (i + j < r)
                        ? pz_from_field(F, F.frob_q(mod.k[i + j], -(long long)j))
                        : pz_zero();

  // V^(-1) Phi = Theta^tr V holds exactly; keep its residual as a self-check.
  {
    TMat lhs = tmat_mul_cap(tmat_from_const(mat_twist(pkg.V, -1)), pkg.Phi, n_t + 1);
    TMat rhs = tmat_mul_cap(tmat_transpose(pkg.Theta), tmat_from_const(pkg.V), n_t + 1);
    pkg.basis_change_residual = tmat_norm(tmat_sub(lhs, rhs));
  }

  // Trivialization from the generating functions.
  pkg.Upsilon = TMat(r, r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) pkg.Upsilon(i, j) = tp_twist(pkg.f[j], i);

  {
    LogQ worst;
    for (uint32_t i = 0; i < r; ++i) {
      TatePoly resid = tp_truncate_deg(tp_mul(tp_t_minus(theta), pkg.f[i]), n_t);
      for (uint32_t j = 1; j <= r; ++j)
        resid = tp_sub(resid, tp_scale(tp_twist(pkg.f[i], (long long)j),
                                       pz_from_field(F, mod.k[j - 1])));
      worst = logq_max(worst, tp_norm(resid));
    }
    pkg.agf_residual = worst;
  }
  {
    TMat resid = tmat_sub(tmat_twist(pkg.Upsilon, 1),
                          tmat_mul_cap(pkg.Theta, pkg.Upsilon, n_t));
    pkg.upsilon_residual = tmat_norm(resid);
  }
  pkg.t0_residual =
      mat_norm_logq(mat_sub(tmat_coeff_slice(pkg.Upsilon, 0), pkg.torsion.B));

  // Independent route: iterate the transition matrix from the companion side
  // and watch the partial products approach Upsilon.
  {
    TMat binv = tmat_from_const(mat_inv(pkg.torsion.B, wf));
    TMat theta_inv_mat = tmat_inv(pkg.Theta, n_t, wf);
    TMat b1 = tmat_from_const(mat_twist(pkg.torsion.B, 1));
    pkg.Fprod = tmat_mul_cap(tmat_mul_cap(binv, theta_inv_mat, n_t), b1, n_t);

    TMat P = tmat_from_const(pkg.torsion.B);
    for (int m = 0;; ++m) {
      TMat Pn = tmat_truncate_floor(
          tmat_mul_cap(P, tmat_twist(pkg.Fprod, m), n_t), wf);
      pkg.pi_vs_upsilon.push_back(tmat_norm(tmat_sub(Pn, pkg.Upsilon)));
      LogQ step = tmat_norm(tmat_sub(Pn, P));
      P = Pn;
      if (!step || logq_le(*step, wf)) break;
      if (m >= kMaxProductSteps)
        fail(ErrKind::Divergence, "periods: transition product did not settle");
    }
  }

  // Dual trivialization.
  {
    TMat ups1t = tmat_transpose(tmat_twist(pkg.Upsilon, 1));
    TMat inv = tmat_inv(ups1t, n_t, wf);
    TMat vinv = tmat_from_const(mat_inv(pkg.V, wf));
    pkg.Psi = tmat_mul_cap(vinv, inv, n_t);
    TMat resid = tmat_sub(tmat_twist(pkg.Psi, -1),
                          tmat_mul_cap(pkg.Phi, pkg.Psi, n_t));
    pkg.psi_residual = tmat_norm(resid);
  }

  return pkg;
}

Puiseux residue_at_theta(const DrinfeldModule& mod, const TatePoly& f) {
  const ScalarField& F = *mod.F;
  Puiseux theta = pz_theta(F);
  Puiseux acc = pz_zero();
  for (uint32_t j = 1; j <= mod.r(); ++j)
    acc = pz_add(acc, pz_scale(tp_eval(tp_twist(f, (long long)j), theta),
                               mod.k[j - 1]));
  return acc;
}

Mat<Puiseux> transition_at_theta(const PeriodPackage& pkg, size_t i) {
  if (i < 1) fail(ErrKind::Domain, "transition at theta: untwisted matrix is singular there");
  const ScalarField& F = *pkg.mod.F;
  Rat depth = -pkg.floor + 3 * kMargin;
  Puiseux theta = pz_theta(F);
  size_t r = pkg.mod.r();

  TMat thetai = tmat_twist(pkg.Theta, (long long)i);
  Mat<Puiseux> at_theta(r, r);
  for (size_t u = 0; u < r; ++u)
    for (size_t v = 0; v < r; ++v)
      at_theta(u, v) = tp_eval(thetai(u, v), theta, false);

  Mat<Puiseux> bi_inv = mat_inv_scaled(mat_twist(pkg.torsion.B, (long long)i), depth);
  Mat<Puiseux> mid = mat_inv_scaled(at_theta, depth);
  Mat<Puiseux> bi1 = mat_twist(pkg.torsion.B, (long long)i + 1);
  return mat_mul(bi_inv, mat_mul(mid, bi1));
}

AlphaBetaReport alpha_beta_check(const PeriodPackage& pkg, size_t n_lo, size_t n_hi) {
  const ScalarField& F = *pkg.mod.F;
  size_t r = pkg.mod.r();
  if (n_lo + 2 < r + 1)
    fail(ErrKind::Domain, "alpha check: start index must be at least rank-1");
  Rat wf = pkg.floor - kMargin;

  Mat<Puiseux> U = mat_mul(mat_transpose(pkg.V), mat_twist(pkg.torsion.B, 1));
  Mat<Puiseux> Uinv = mat_inv(U, wf);
  Mat<Puiseux> id = mat_identity(r, pz_one(F));

  auto column0 = [&](const Mat<Puiseux>& m) {
    std::vector<Puiseux> col(m.rows);
    for (size_t i = 0; i < m.rows; ++i) col[i] = m(i, 0);
    return col;
  };
  auto row_of = [&](const Mat<Puiseux>& m, size_t i) {
    std::vector<Puiseux> row(m.cols);
    for (size_t j = 0; j < m.cols; ++j) row[j] = m(i, j);
    return row;
  };

  if (n_lo < 1) fail(ErrKind::Domain, "alpha check: start index must be positive");

  AlphaBetaReport rep;
  {
    Mat<Puiseux> acc(r, r);
    for (size_t m = 0; m < r; ++m) {
      auto u = column0(mat_twist(Uinv, (long long)m - 1));
      auto v = row_of(mat_twist(U, (long long)r - 2), r - m - 1);
      acc = mat_add(acc, outer_product(u, v));
    }
    rep.beta_dev = mat_norm_logq(mat_sub(acc, id));
  }

  std::vector<Mat<Puiseux>> ftheta;  // transition at theta, twists tw_lo .. n_hi
  long long tw_lo = std::min<long long>((long long)n_lo - ((long long)r - 2),
                                        (long long)n_lo);
  for (long long i = tw_lo; i <= (long long)n_hi; ++i)
    ftheta.push_back(transition_at_theta(pkg, (size_t)i));

  for (size_t n = n_lo; n <= n_hi; ++n) {
    Mat<Puiseux> acc(r, r);
    for (size_t m = 0; m < r; ++m) {
      Mat<Puiseux> prod = id;
      for (size_t u = 0; u < m; ++u) {
        long long tw = (long long)n - ((long long)r - 2) + (long long)u;
        prod = mat_mul(prod, ftheta[(size_t)(tw - tw_lo)]);
      }
      auto ucol = column0(mat_twist(Uinv, (long long)n - ((long long)r - 1) + (long long)m));
      auto vrow = row_of(mat_twist(U, (long long)n), r - m - 1);
      acc = mat_add(acc, mat_mul(prod, outer_product(ucol, vrow)));
    }
    rep.n_values.push_back(n);
    rep.alpha_dev.push_back(mat_norm_logq(mat_sub(acc, id)));
    rep.ftilde_norm.push_back(
        mat_norm_logq(mat_sub(ftheta[(size_t)((long long)n - tw_lo)], id)));
  }

  rep.alpha_strictly_decreasing = true;
  for (size_t i = 1; i < rep.alpha_dev.size(); ++i) {
    const LogQ& a = rep.alpha_dev[i - 1];
    const LogQ& b = rep.alpha_dev[i];
    if (!a && b) rep.alpha_strictly_decreasing = false;          // -inf then finite
    if (a && b && !(*b < *a)) rep.alpha_strictly_decreasing = false;
  }
  return rep;
}

CarlitzPack carlitz_specials(const ScalarField& F, long long n_t, const Rat& floor) {
  Rat wf = floor - kMargin;
  uint64_t nn = F.q - 1;
  uint32_t ct = scalar_root(F, F.neg(1), nn);
  Rat e1(1, (long long)nn);

  // Tail factors (1 - t/theta^(q^j))^(-1) differ from 1 by q^(-q^j) per
  // t-degree; stop once that clears the floor with room for the unit lead.
  long long J = 0;
  while (!(qpow_rat(F, J + 1) >= -wf + 2)) ++J;

  TatePoly omega = tp_const(pz_term(F, ct, e1));
  for (long long j = 0; j <= J; ++j) {
    TatePoly factor =
        tp_from_coeffs({pz_one(F), pz_neg(pz_inv(theta_qm(F, j)))});
    omega = tp_mul_cap(omega, tp_inv(factor, n_t, wf), n_t);
  }
  omega = tp_truncate_floor(omega, wf);

  TatePoly Omega = tp_inv(tp_twist(omega, 1), n_t, wf);

  Puiseux pit = pz_mul(pz_theta(F), pz_term(F, ct, e1));
  for (long long j = 1;; ++j) {
    Rat dev = 1 - qpow_rat(F, j);
    if (dev <= wf - 2) break;
    Puiseux factor = pz_sub(pz_one(F), pz_term(F, 1, dev));
    pit = pz_mul(pit, pz_inv(factor, wf - 2));
  }
  pit = pz_truncate(pit, wf);

  return {std::move(omega), std::move(Omega), std::move(pit)};
}

TatePoly carlitz_S(const ScalarField& F, size_t i) {
  TatePoly acc = tp_const(pz_one(F));
  for (size_t m = 0; m < i; ++m)
    acc = tp_mul(acc, tp_t_minus(theta_qm(F, (long long)m)));
  return acc;
}

Puiseux carlitz_L(const ScalarField& F, size_t i) {
  Puiseux acc = pz_one(F);
  for (size_t m = 1; m <= i; ++m)
    acc = pz_mul(acc, pz_sub(pz_theta(F), theta_qm(F, (long long)m)));
  return acc;
}

Puiseux zeta_A(const ScalarField& F, uint32_t n, uint32_t D) {
  if (n == 0) fail(ErrKind::Domain, "zeta: exponent must be positive");
  Rat wf = Rat(-(long long)(D + 1) * n) - 4;
  std::vector<uint32_t> base = F.subfield_elems(F.q);
  Puiseux acc = pz_zero();
  for (uint32_t d = 0; d <= D; ++d) {
    std::vector<size_t> odo(d, 0);
    for (;;) {
      Puiseux a = pz_term(F, 1, Rat((long long)d));
      for (uint32_t i = 0; i < d; ++i)
        if (base[odo[i]] != 0)
          a = pz_add(a, pz_term(F, base[odo[i]], Rat((long long)i)));
      acc = pz_add(acc, pz_pow(a, -(long long)n, wf));
      uint32_t pos = 0;
      while (pos < d && ++odo[pos] == base.size()) odo[pos++] = 0;
      if (pos == d) break;
    }
  }
  return pz_truncate(acc, Rat(-(long long)(D + 1) * n));
}

}  // namespace dmlab
