#include "dmlab/motivic.hpp"

#include <algorithm>
#include <utility>

namespace dmlab {
namespace {

// Exact-coefficient budget when a window is in force. Coefficients whose
// lead or exponent span outgrows twice the window (or this slot count) get
// cut to the window depth, so later lattice merges stay shallow: a sparse
// exact term sitting q^n below a lead would otherwise force a dense span
// when its lattice folds against a unit-step factor.
constexpr size_t kWindowTerms = 4096;

long long eff_deg(const TatePoly& f) {
  for (size_t i = f.c.size(); i > 0; --i)
    if (!f.c[i - 1].is_zero()) return (long long)i - 1;
  return -1;
}

LogQ row_gauss_norm(const std::vector<TatePoly>& row) {
  LogQ nm;
  for (const auto& f : row) nm = logq_max(nm, tp_norm(f));
  return nm;
}

// Pivot coefficient of row n: a single exact constant from the prime-q
// subfield. Returns 0 when the shape is off.
uint32_t pivot_unit(const ScalarField& F, const std::vector<TatePoly>& row,
                    size_t n, uint32_t r) {
  size_t s = n / r, j = n % r;
  const TatePoly& piv = row[r - 1 - j];
  if (eff_deg(piv) != (long long)s) return 0;
  Puiseux c = tp_coeff(piv, s);
  if (c.nterms() != 1 || c.lead_exp() != 0) return 0;
  uint32_t x = pz_coeff(c, Rat(0));
  if (x == 0 || F.frob_q(x, 1) != x) return 0;
  return x;
}

// Certificate that the weights w_n = log_q|a_n| + q^n q^(r-1)/(q^r-1) of the
// nonzero coefficients decay: strictly decreasing past the peak, and the
// peak not on the final nonzero coefficient. That is the finite witness of
// |a_n| v^(q^n) -> 0; a weight sequence maximal at its end witnesses growth.
void check_weight_decay(const DrinfeldModule& mod,
                        const std::vector<Puiseux>& a, ErrKind kind) {
  std::vector<Rat> w;
  for (size_t n = 0; n < a.size(); ++n) {
    LogQ wn = motive_weight(mod, a[n], n);
    if (wn) w.push_back(*wn);
  }
  if (w.size() <= 1) return;
  size_t peak = 0;
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[peak]) peak = i;
  if (peak + 1 == w.size())
    fail(kind, "coefficient weights peak at the last nonzero term");
  for (size_t i = peak + 1; i < w.size(); ++i)
    if (!(w[i] < w[i - 1]))
      fail(kind, "coefficient weights fail to decrease past their peak");
}

}  // namespace

MotiveRows build_motive_rows(const DrinfeldModule& mod, size_t n_max,
                             std::optional<Rat> window) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  uint32_t kr = mod.k.back();
  if (kr == 0 || F.frob_q(kr, 1) != kr)
    fail(ErrKind::Domain, "top coefficient must be a prime-subfield unit");

  MotiveRows out;
  out.mod = mod;
  out.n_max = n_max;
  out.window = window;
  out.rows.reserve(n_max + 1);
  out.lead_unit.reserve(n_max + 1);

  uint32_t krinv = F.inv(kr);
  TatePoly tmt = tp_t_minus(pz_theta(F));

  std::vector<TatePoly> row(r);
  row[r - 1] = tp_const(pz_one(F));
  out.rows.push_back(row);

  for (size_t n = 1; n <= n_max; ++n) {
    std::vector<TatePoly> next(r);
    for (uint32_t v = 0; v + 1 < r; ++v) next[v] = tp_twist(row[v + 1], 1);
    TatePoly last = tp_scale(tp_mul(tp_twist(row[0], 1), tmt),
                             pz_from_field(F, krinv));
    for (uint32_t u = 1; u < r; ++u) {
      uint32_t cu = F.mul(F.frob_q(mod.k[u - 1], -(long long)u), krinv);
      last = tp_sub(last, tp_scale(tp_twist(row[u], 1), pz_from_field(F, cu)));
    }
    next[r - 1] = std::move(last);
    if (window) {
      Rat wide = Rat(2) * *window;
      for (auto& f : next)
        for (auto& c : f.c) {
          if (c.is_zero()) continue;
          Rat le = c.lead_exp();
          bool small = le <= wide && le - c.exp_at(0) <= wide &&
                       c.nterms() <= kWindowTerms;
          if (!small) c = pz_truncate(c, le - *window);
        }
    }
    row = std::move(next);
    out.rows.push_back(row);
  }

  for (size_t n = 0; n <= n_max; ++n) {
    uint32_t u = pivot_unit(F, out.rows[n], n, r);
    if (u == 0)
      fail(ErrKind::Internal, "row pivot is not a prime-subfield unit");
    out.lead_unit.push_back(u);
  }
  return out;
}

LogQ motive_weight(const DrinfeldModule& mod, const Puiseux& a, size_t n) {
  if (a.is_zero()) return std::nullopt;
  long long q = (long long)mod.F->q;
  uint32_t r = mod.r();
  Rat vexp = q_pow(q, r - 1) / (q_pow(q, r) - 1);
  return *a.norm_logq() + q_pow(q, (long long)n) * vexp;
}

std::vector<TatePoly> varphi_forward(const MotiveRows& rows,
                                     const std::vector<Puiseux>& a) {
  const DrinfeldModule& mod = rows.mod;
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  if (a.size() > rows.n_max + 1)
    fail(ErrKind::Shape, "coefficient list longer than the generated rows");
  check_weight_decay(mod, a, ErrKind::Domain);

  LogQ peak;
  for (size_t n = 0; n < a.size(); ++n)
    peak = logq_max(peak, motive_weight(mod, a[n], n));

  uint32_t krinv = F.inv(mod.k.back());
  std::vector<TatePoly> out(r);
  for (size_t n = 0; n < a.size(); ++n) {
    if (a[n].is_exact_zero()) continue;
    Puiseux fac = pz_scale(a[n], krinv);
    for (uint32_t v = 0; v < r; ++v)
      out[v] = tp_add(out[v], tp_scale(rows.rows[n][v], fac));
  }
  if (!logq_le(row_gauss_norm(out), peak))
    fail(ErrKind::Internal, "forward image breaks the Gauss norm bound");
  return out;
}

std::vector<Puiseux> varphi_inverse(const MotiveRows& rows,
                                    std::vector<TatePoly> g) {
  const DrinfeldModule& mod = rows.mod;
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  if (g.size() != r) fail(ErrKind::Shape, "row width does not match the rank");

  uint32_t kr = mod.k.back();
  uint32_t krinv = F.inv(kr);
  std::vector<Puiseux> a(rows.n_max + 1, pz_zero());
  for (size_t n = rows.n_max + 1; n > 0;) {
    --n;
    size_t s = n / r, j = n % r;
    Puiseux c = tp_coeff(g[r - 1 - j], s);
    a[n] = pz_scale(c, F.div(kr, rows.lead_unit[n]));
    if (a[n].is_zero()) continue;  // nothing representable to subtract
    Puiseux fac = pz_scale(a[n], krinv);
    for (uint32_t v = 0; v < r; ++v)
      g[v] = tp_sub(g[v], tp_scale(rows.rows[n][v], fac));
  }
  for (uint32_t v = 0; v < r; ++v)
    if (!g[v].is_zero()) {
      LogQ nm = tp_norm(g[v]);
      fail(ErrKind::NotInImage,
           "peel residual above floor at coordinate " + std::to_string(v + 1) +
               ", log_q norm " + (nm ? rat_str(*nm) : "-inf"));
    }
  check_weight_decay(mod, a, ErrKind::NotInImage);
  return a;
}

Puiseux mellin_value(const MotiveRows& rows, const std::vector<TatePoly>& g,
                     const Puiseux& z, bool series_tail) {
  if (z.is_exact_zero()) return pz_zero();
  std::vector<Puiseux> a = varphi_inverse(rows, g);
  return twisted_series_eval(a, z, series_tail);
}

RowLawReport row_law_report(const MotiveRows& rows) {
  const DrinfeldModule& mod = rows.mod;
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  long long q = (long long)F.q;
  Rat qr1 = q_pow(q, r) - 1;

  RowLawReport rep;
  for (size_t n = 0; n <= rows.n_max; ++n) {
    const auto& row = rows.rows[n];
    size_t s = n / r, j = n % r;
    ++rep.rows_checked;

    std::vector<long long> d(r);
    for (uint32_t v = 0; v < r; ++v) d[v] = eff_deg(row[v]);

    if (d[r - 1 - j] != (long long)s || pivot_unit(F, row, n, r) == 0)
      ++rep.degree_violations;
    for (size_t i = 0; i < j; ++i)
      if (!(d[r - 1 - j] >= d[r - 1 - i])) ++rep.ordering_violations;
    for (size_t i = j + 1; i < r; ++i)
      if (!(d[r - 1 - j] > d[r - 1 - i])) ++rep.ordering_violations;

    for (size_t nu = 0; nu <= s; ++nu) {
      Rat bound = (q_pow(q, (long long)n) - q_pow(q, (long long)(nu * r + j))) / qr1;
      for (uint32_t v = 0; v < r; ++v) {
        LogQ nm = tp_coeff(row[v], nu).norm_logq();
        if (nm && !(*nm <= bound)) ++rep.coeff_norm_violations;
      }
    }

    LogQ rn = row_gauss_norm(row);
    Rat bound = (q_pow(q, (long long)(n + r - 1)) - q_pow(q, r - 1)) / qr1;
    if (rn && !(*rn <= bound)) ++rep.row_norm_violations;
    Rat exact = q_pow(q, (long long)j) * (q_pow(q, (long long)(s * r)) - 1) / qr1;
    if (!rn || *rn != exact) ++rep.exact_norm_violations;
  }
  return rep;
}

ImageDecayReport image_decay_check(const MotiveRows& rows,
                                   const std::vector<Puiseux>& a,
                                   const std::vector<TatePoly>& g) {
  const DrinfeldModule& mod = rows.mod;
  long long q = (long long)mod.F->q;
  uint32_t r = mod.r();
  Rat qr1 = q_pow(q, r) - 1;

  ImageDecayReport rep;
  LogQ cp;
  for (size_t n = 0; n < a.size(); ++n)
    cp = logq_max(cp, motive_weight(mod, a[n], n));
  if (!cp) return rep;  // zero element: nothing to bound
  rep.cprime = *cp;

  for (const auto& f : g)
    for (size_t s = 0; s < f.c.size(); ++s) {
      LogQ nm = f.c[s].norm_logq();
      if (!nm) continue;
      ++rep.checked;
      if (!(*nm <= rep.cprime - q_pow(q, (long long)(s * r)) / qr1))
        ++rep.violations;
    }
  return rep;
}

LogFormulaReport verify_log_formula(const PeriodPackage& pkg,
                                    const MotiveRows& rows,
                                    const std::vector<Puiseux>& zs,
                                    long long deg_cap) {
  const DrinfeldModule& mod = pkg.mod;
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();

  LogFormulaReport rep;
  for (uint32_t i = 0; i < r; ++i)
    rep.pi_row.push_back(pz_neg(residue_at_theta(mod, pkg.f[i])));

  TMat psi_m = tmat_twist(mat_transpose(pkg.Psi), -1);
  std::vector<TatePoly> R(r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t u = 0; u < r; ++u)
      R[i] = tp_add(R[i], tp_scale(psi_m(u, i), rep.pi_row[u]));

  std::vector<TatePoly> phib = varphi_forward(rows, pkg.betas);
  TatePoly tmt = tp_t_minus(pz_theta(F));
  long long cap = std::min(deg_cap, pkg.n_t);
  rep.cleared_ok = true;
  for (uint32_t i = 0; i < r; ++i) {
    TatePoly lhs = tp_add(tp_mul(tmt, phib[i]), R[i]);
    for (long long nu = 0; nu <= cap; ++nu) {
      Puiseux c = tp_coeff(lhs, nu);
      rep.cleared_residual = logq_max(rep.cleared_residual, c.norm_logq());
      if (!c.is_zero()) rep.cleared_ok = false;
    }
  }

  // 1/(theta - t) as the geometric t-series.
  std::vector<Puiseux> geo;
  for (long long i = 0; i <= pkg.n_t; ++i)
    geo.push_back(pz_term(F, 1, Rat(-(i + 1))));
  TatePoly sgeo = tp_from_coeffs(std::move(geo));
  std::vector<TatePoly> G(r);
  for (uint32_t i = 0; i < r; ++i) G[i] = tp_mul_cap(R[i], sgeo, pkg.n_t);

  rep.z_ok = true;
  for (const Puiseux& z : zs) {
    Puiseux mel = mellin_value(rows, G, z);
    Puiseux dir =
        z.is_exact_zero() ? pz_zero() : twisted_series_eval(pkg.betas, z);
    Puiseux diff = pz_sub(mel, dir);
    rep.z_values.push_back(mel);
    rep.direct_values.push_back(dir);
    rep.z_residuals.push_back(diff.norm_logq());
    if (!diff.is_zero()) rep.z_ok = false;
  }
  return rep;
}

}  // namespace dmlab
