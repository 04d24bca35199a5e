#include "dmlab/tensor.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace dmlab {
namespace {

// Same exact-coefficient budget as the width-r motive builder: once a
// window is in force, coefficients whose lead or exponent span outgrows
// twice the window (or the slot budget) are cut to the window depth.
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

void window_cut_poly(TatePoly& f, const Rat& window) {
  Rat wide = Rat(2) * window;
  for (auto& c : f.c) {
    if (c.is_zero()) continue;
    Rat le = c.lead_exp();
    bool small =
        le <= wide && le - c.exp_at(0) <= wide && c.nterms() <= kWindowTerms;
    if (!small) c = pz_truncate(c, le - window);
  }
}

void window_cut(std::vector<TatePoly>& row, const Rat& window) {
  for (auto& f : row) window_cut_poly(f, window);
}

// Decay certificate for a single stream: the weights of the nonzero
// coefficients must fall strictly past their peak, and the peak must not
// sit on the final nonzero coefficient.
void check_stream_decay(const TensorModule& tm, const std::vector<Puiseux>& a,
                        uint32_t ell, ErrKind kind) {
  std::vector<Rat> w;
  for (size_t n = 0; n < a.size(); ++n) {
    LogQ wn = tensor_weight(tm, a[n], n, ell);
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

Mat<Puiseux> ad_nilpotent(const Mat<Puiseux>& N, const Mat<Puiseux>& X) {
  return mat_sub(mat_mul(N, X), mat_mul(X, N));
}

// Solve c X - (N X - X N) = C with N the offset-r nilpotent. The adjoint
// action vanishes at order 2k+1, so the resolvent is the finite series
// sum_{i<=2k} c^-(i+1) ad^i(C); the solution is verified before returning.
Mat<Puiseux> solve_shifted(const Mat<Puiseux>& N, const Puiseux& c,
                           const Mat<Puiseux>& C, uint32_t k,
                           const Rat& work_floor) {
  Puiseux cinv = pz_inv(c, work_floor);
  Mat<Puiseux> X(C.rows, C.cols);
  Mat<Puiseux> term = C;
  Puiseux fac = cinv;
  for (uint32_t i = 0; i <= 2 * k; ++i) {
    X = mat_add(X, mat_scale(term, fac));
    if (i < 2 * k) {
      term = ad_nilpotent(N, term);
      fac = pz_mul(fac, cinv);
    }
  }
  Mat<Puiseux> res = mat_sub(mat_sub(mat_scale(X, c), ad_nilpotent(N, X)), C);
  if (!mat_is_zero(res))
    fail(ErrKind::Internal, "shifted commutator solve fails its identity");
  return X;
}

// Scale part of the decay bound for column ell: the strict threshold on
// log_q |z_ell| for convergence of the logarithm series.
Rat column_scale(const TensorModule& tm, uint32_t ell) {
  long long q = (long long)tm.mod.F->q;
  long long r = tm.mod.r();
  Rat qr1 = q_pow(q, r) - 1;
  Rat kq1 = Rat((long long)tm.k) / Rat(q - 1);
  if (ell == 1) return q_pow(q, r) / qr1 + kq1;
  long long u = ((long long)ell - 2) / r;
  long long j = ((long long)ell - 2) % r + 1;
  return Rat(u + 1) + q_pow(q, j) / qr1 + kq1;
}

// log_q of the Gauss norm of the exact product (t-theta)(t-theta^q)...,
// with i+1 factors; zero for i <= -1.
Rat s_norm(long long q, long long i) {
  if (i < 0) return Rat(0);
  return (q_pow(q, i + 1) - 1) / Rat(q - 1);
}

// Norm law of the j-th row of the m-fold twisted companion product.
Rat fund_row_bound(long long q, long long r, long long j, long long m) {
  if (m < 0) return Rat(0);
  if (m == 0) return Rat(j == r ? 1 : 0);
  if (m < r - j) return Rat(0);
  return q_pow(q, m - (r - j)) + s_norm(q, m - (2 * r - j));
}

}  // namespace

TensorModule make_tensor(const DrinfeldModule& mod, uint32_t k) {
  if (k == 0) fail(ErrKind::Domain, "tensor power must be positive");
  return TensorModule{mod, k};
}

Mat<Puiseux> tensor_nilpotent(const TensorModule& tm) {
  const ScalarField& F = *tm.mod.F;
  uint32_t r = tm.mod.r(), d = tm.d();
  Mat<Puiseux> N(d, d);
  for (uint32_t i = 1; i + r <= d; ++i) N(i - 1, i - 1 + r) = pz_one(F);
  return N;
}

Mat<Puiseux> tensor_tau_coeff(const TensorModule& tm) {
  const ScalarField& F = *tm.mod.F;
  uint32_t r = tm.mod.r(), d = tm.d(), k = tm.k;
  Mat<Puiseux> A(d, d);
  for (uint32_t i = 1; i < r; ++i) A(r * (k - 1) + i, i - 1) = pz_one(F);
  for (uint32_t i = 1; i <= r; ++i)
    A(d - 1, i - 1) = pz_from_field(F, tm.mod.k[i - 1]);
  return A;
}

SkewPoly<Mat<Puiseux>> tensor_theta_op(const TensorModule& tm) {
  const ScalarField& F = *tm.mod.F;
  uint32_t d = tm.d();
  Mat<Puiseux> c0 = tensor_nilpotent(tm);
  for (uint32_t i = 0; i < d; ++i) c0(i, i) = pz_add(c0(i, i), pz_theta(F));
  return sk_make(SkewVar::Tau,
                 std::vector<Mat<Puiseux>>{c0, tensor_tau_coeff(tm)});
}

DrinfeldModule partner_module(const DrinfeldModule& mod) {
  const ScalarField& F = *mod.F;
  if (mod.r() != 2) fail(ErrKind::Domain, "partner is defined for rank two");
  for (uint32_t kj : mod.k)
    if (!F.in_subfield(kj, F.q))
      fail(ErrKind::Domain, "partner needs prime-subfield coefficients");
  return make_drinfeld(F, {F.neg(F.div(mod.k[0], mod.k[1])), F.inv(mod.k[1])});
}

std::vector<Mat<Puiseux>> tensor_log_coeffs(const TensorModule& tm, size_t n,
                                            const Rat& work_floor) {
  const ScalarField& F = *tm.mod.F;
  long long q = (long long)F.q;
  Mat<Puiseux> N = tensor_nilpotent(tm);
  Mat<Puiseux> A1 = tensor_tau_coeff(tm);
  Puiseux th = pz_theta(F);
  Puiseux mone = pz_neg(pz_one(F));

  std::vector<Mat<Puiseux>> P;
  P.push_back(mat_identity(tm.d(), pz_one(F)));
  for (size_t m = 1; m <= n; ++m) {
    Puiseux c = pz_sub(pz_term(F, 1, q_pow(q, (long long)m)), th);
    Mat<Puiseux> C =
        mat_scale(mat_mul(P[m - 1], mat_twist(A1, (long long)m - 1)), mone);
    P.push_back(mat_truncate(solve_shifted(N, c, C, tm.k, work_floor),
                             work_floor));
  }
  return P;
}

std::vector<Mat<Puiseux>> tensor_exp_coeffs(const TensorModule& tm, size_t n,
                                            const Rat& work_floor) {
  const ScalarField& F = *tm.mod.F;
  long long q = (long long)F.q;
  Mat<Puiseux> N = tensor_nilpotent(tm);
  Mat<Puiseux> A1 = tensor_tau_coeff(tm);
  Puiseux th = pz_theta(F);

  std::vector<Mat<Puiseux>> E;
  E.push_back(mat_identity(tm.d(), pz_one(F)));
  for (size_t m = 1; m <= n; ++m) {
    Puiseux c = pz_sub(pz_term(F, 1, q_pow(q, (long long)m)), th);
    Mat<Puiseux> C = mat_mul(A1, mat_twist(E[m - 1], 1));
    E.push_back(mat_truncate(solve_shifted(N, c, C, tm.k, work_floor),
                             work_floor));
  }
  return E;
}

Rat tensor_log_tail_bound(const TensorModule& tm, size_t n, uint32_t ell) {
  if (ell < 1 || ell > tm.d())
    fail(ErrKind::Shape, "column index outside the module dimension");
  long long q = (long long)tm.mod.F->q;
  long long r = tm.mod.r();
  Rat qr1 = q_pow(q, r) - 1;
  Rat cst = q_pow(q, r) / qr1 + Rat((long long)tm.k) * q / Rat(q - 1);
  return -q_pow(q, (long long)n) * column_scale(tm, ell) + cst;
}

bool tensor_log_domain(const TensorModule& tm, const std::vector<Puiseux>& z) {
  if (z.size() != tm.d())
    fail(ErrKind::Shape, "coordinate count differs from the module dimension");
  for (uint32_t ell = 1; ell <= tm.d(); ++ell) {
    LogQ nm = z[ell - 1].norm_logq();
    if (nm && !(*nm < column_scale(tm, ell))) return false;
  }
  return true;
}

Puiseux tensor_log_value(const TensorModule& tm,
                         const std::vector<Mat<Puiseux>>& P,
                         const std::vector<Puiseux>& z, uint32_t coord) {
  const ScalarField& F = *tm.mod.F;
  uint32_t d = tm.d(), r = tm.mod.r();
  if (coord < 1 || coord > d)
    fail(ErrKind::Shape, "coordinate index outside the module dimension");
  if (coord + r <= d)
    fail(ErrKind::Domain, "tail bound covers only the last rows");
  if (P.empty()) fail(ErrKind::Shape, "no coefficient matrices supplied");
  if (!tensor_log_domain(tm, z))
    fail(ErrKind::Domain, "argument outside the convergence region");

  long long q = (long long)F.q;
  Puiseux acc;
  long long e = 1;
  for (size_t n = 0; n < P.size(); ++n) {
    for (uint32_t ell = 1; ell <= d; ++ell) {
      if (z[ell - 1].is_exact_zero()) continue;
      acc = pz_add(acc, pz_mul(P[n](coord - 1, ell - 1),
                               pz_pow(z[ell - 1], e)));
    }
    e *= q;
  }

  LogQ stamp;
  for (uint32_t ell = 1; ell <= d; ++ell) {
    LogQ nm = z[ell - 1].norm_logq();
    if (!nm && z[ell - 1].floor_) nm = z[ell - 1].floor_;
    if (!nm) continue;
    stamp = logq_max(stamp, tensor_log_tail_bound(tm, P.size(), ell) +
                                q_pow(q, (long long)P.size()) * *nm);
  }
  if (stamp) acc = pz_add(acc, pz_zero_prec(&F, *stamp));
  return acc;
}

TensorRows build_tensor_rows(const TensorModule& tm, size_t n_max,
                             std::optional<Rat> window) {
  const ScalarField& F = *tm.mod.F;
  uint32_t r = tm.mod.r(), d = tm.d(), k = tm.k;
  uint32_t kr = tm.mod.k.back();
  if (kr == 0 || F.frob_q(kr, 1) != kr)
    fail(ErrKind::Domain, "top coefficient must be a prime-subfield unit");
  long long q = (long long)F.q;
  uint32_t krinv = F.inv(kr);

  TensorRows out;
  out.tm = tm;
  out.n_max = n_max;
  out.window = window;
  out.rows.reserve(n_max + 1);

  // rows of the twisted companion products, starting one step before the
  // first product (the identity)
  std::vector<std::vector<TatePoly>> prev(r, std::vector<TatePoly>(r));
  for (uint32_t j = 0; j < r; ++j) prev[j][j] = tp_const(pz_one(F));
  TatePoly snk = tp_const(pz_one(F));  // running k-th power of the t-shifts

  for (size_t n = 0; n <= n_max; ++n) {
    TatePoly tshift = tp_t_minus(pz_term(F, 1, q_pow(q, (long long)n)));

    std::vector<std::vector<TatePoly>> rn;
    rn.reserve(d);
    TatePoly base = snk;
    for (uint32_t u = 0; u < k; ++u) {
      for (uint32_t j = 0; j < r; ++j) {
        std::vector<TatePoly> st(r);
        for (uint32_t c = 0; c < r; ++c) st[c] = tp_mul(base, prev[j][c]);
        rn.push_back(std::move(st));
      }
      base = tp_mul(base, tshift);
    }
    {
      std::vector<TatePoly> st(r);
      for (uint32_t c = 0; c < r; ++c) st[c] = tp_mul(base, prev[0][c]);
      rn.push_back(std::move(st));
    }
    if (window)
      for (auto& st : rn) window_cut(st, *window);
    out.rows.push_back(std::move(rn));

    snk = std::move(base);
    if (window) window_cut_poly(snk, *window);

    if (n < n_max) {
      std::vector<std::vector<TatePoly>> nf(r, std::vector<TatePoly>(r));
      for (uint32_t j = 0; j + 1 < r; ++j) nf[j] = prev[j + 1];
      std::vector<TatePoly> bot(r);
      for (uint32_t c = 0; c < r; ++c) bot[c] = tp_mul(tshift, prev[0][c]);
      for (uint32_t j = 1; j < r; ++j) {
        uint32_t cj = F.frob_q(tm.mod.k[j - 1], (long long)n);
        for (uint32_t c = 0; c < r; ++c)
          bot[c] = tp_sub(bot[c], tp_scale(prev[j][c], pz_from_field(F, cj)));
      }
      for (uint32_t c = 0; c < r; ++c)
        bot[c] = tp_scale(bot[c], pz_from_field(F, krinv));
      nf[r - 1] = std::move(bot);
      if (window)
        for (auto& rw : nf) window_cut(rw, *window);
      prev = std::move(nf);
      out.fund.push_back(prev);
    }
  }

  // Pivot pass: in (n, ell) order the pivots must walk the (degree,
  // coordinate) grid in consecutive lexicographic steps from (0, 1), each
  // carrying an exact prime-subfield unit. The walk is what the peel in the
  // inverse relies on, so a break is fatal.
  long long ed = 0;
  uint32_t ec = 1;
  for (size_t n = 0; n <= n_max; ++n) {
    std::vector<long long> pd;
    std::vector<uint32_t> pc, pu;
    for (uint32_t ell = 1; ell <= d; ++ell) {
      const auto& st = out.rows[n][ell - 1];
      long long best = -1;
      uint32_t bc = 0;
      for (uint32_t c = 1; c <= r; ++c) {
        long long dg = eff_deg(st[c - 1]);
        if (dg >= best) {
          best = dg;
          bc = c;
        }
      }
      uint32_t x = 0;
      if (best >= 0) {
        Puiseux cc = tp_coeff(st[bc - 1], (size_t)best);
        if (cc.nterms() == 1 && cc.lead_exp() == 0) x = pz_coeff(cc, Rat(0));
      }
      if (x == 0 || F.frob_q(x, 1) != x)
        fail(ErrKind::Internal, "stream pivot is not a prime-subfield unit");
      if (best != ed || bc != ec)
        fail(ErrKind::Internal, "stream pivots break the lexicographic walk");
      pd.push_back(best);
      pc.push_back(bc);
      pu.push_back(x);
      if (ec < r) {
        ++ec;
      } else {
        ec = 1;
        ++ed;
      }
    }
    out.pivot_deg.push_back(std::move(pd));
    out.pivot_coord.push_back(std::move(pc));
    out.pivot_unit.push_back(std::move(pu));
  }
  return out;
}

LogQ tensor_weight(const TensorModule& tm, const Puiseux& a, size_t n,
                   uint32_t ell) {
  if (a.is_zero()) return std::nullopt;
  long long q = (long long)tm.mod.F->q;
  long long r = tm.mod.r();
  long long u = ((long long)ell - 1) / r;
  Rat vexp = q_pow(q, r - 1) / (q_pow(q, r) - 1) + Rat(u) +
             Rat((long long)tm.k) / Rat(q - 1);
  return *a.norm_logq() + q_pow(q, (long long)n) * vexp;
}

std::vector<TatePoly> varphi_tens_forward(
    const TensorRows& rows, const std::vector<std::vector<Puiseux>>& a) {
  const TensorModule& tm = rows.tm;
  uint32_t r = tm.mod.r(), d = tm.d();
  if (a.size() > rows.n_max + 1)
    fail(ErrKind::Shape, "coefficient list longer than the generated rows");
  for (const auto& an : a)
    if (an.size() != d)
      fail(ErrKind::Shape, "coefficient width differs from the module dimension");

  for (uint32_t ell = 1; ell <= d; ++ell) {
    std::vector<Puiseux> col;
    for (size_t n = 0; n < a.size(); ++n) col.push_back(a[n][ell - 1]);
    check_stream_decay(tm, col, ell, ErrKind::Domain);
  }

  LogQ peak;
  for (size_t n = 0; n < a.size(); ++n)
    for (uint32_t ell = 1; ell <= d; ++ell)
      peak = logq_max(peak, tensor_weight(tm, a[n][ell - 1], n, ell));

  std::vector<TatePoly> out(r);
  for (size_t n = 0; n < a.size(); ++n)
    for (uint32_t ell = 1; ell <= d; ++ell) {
      if (a[n][ell - 1].is_exact_zero()) continue;
      for (uint32_t c = 0; c < r; ++c)
        out[c] = tp_add(out[c],
                        tp_scale(rows.rows[n][ell - 1][c], a[n][ell - 1]));
    }
  if (!logq_le(row_gauss_norm(out), peak))
    fail(ErrKind::Internal, "forward image breaks the Gauss norm bound");
  return out;
}

std::vector<std::vector<Puiseux>> varphi_tens_inverse(const TensorRows& rows,
                                                      std::vector<TatePoly> g) {
  const TensorModule& tm = rows.tm;
  const ScalarField& F = *tm.mod.F;
  uint32_t r = tm.mod.r(), d = tm.d();
  if (g.size() != r)
    fail(ErrKind::Shape, "row width does not match the motive width");

  std::vector<std::vector<Puiseux>> a(rows.n_max + 1,
                                      std::vector<Puiseux>(d));
  for (size_t n = rows.n_max + 1; n > 0;) {
    --n;
    for (uint32_t ell = d; ell >= 1; --ell) {
      long long pd = rows.pivot_deg[n][ell - 1];
      uint32_t pc = rows.pivot_coord[n][ell - 1];
      Puiseux c = tp_coeff(g[pc - 1], (size_t)pd);
      a[n][ell - 1] = pz_scale(c, F.inv(rows.pivot_unit[n][ell - 1]));
      if (a[n][ell - 1].is_zero()) continue;  // nothing representable to subtract
      for (uint32_t v = 0; v < r; ++v)
        g[v] = tp_sub(g[v],
                      tp_scale(rows.rows[n][ell - 1][v], a[n][ell - 1]));
    }
  }
  for (uint32_t v = 0; v < r; ++v)
    if (!g[v].is_zero()) {
      LogQ nm = tp_norm(g[v]);
      fail(ErrKind::NotInImage,
           "peel residual above floor at coordinate " + std::to_string(v + 1) +
               ", log_q norm " + (nm ? rat_str(*nm) : "-inf"));
    }
  for (uint32_t ell = 1; ell <= d; ++ell) {
    std::vector<Puiseux> col;
    for (size_t n = 0; n <= rows.n_max; ++n) col.push_back(a[n][ell - 1]);
    check_stream_decay(tm, col, ell, ErrKind::NotInImage);
  }
  return a;
}

Puiseux mellin_tens_value(const TensorRows& rows, std::vector<TatePoly> g,
                          const std::vector<Puiseux>& z) {
  const TensorModule& tm = rows.tm;
  if (z.size() != tm.d())
    fail(ErrKind::Shape, "coordinate count differs from the module dimension");
  std::vector<std::vector<Puiseux>> a = varphi_tens_inverse(rows, std::move(g));
  Puiseux acc;
  for (uint32_t ell = 1; ell <= tm.d(); ++ell) {
    if (z[ell - 1].is_exact_zero()) continue;
    std::vector<Puiseux> col;
    for (size_t n = 0; n < a.size(); ++n) col.push_back(a[n][ell - 1]);
    acc = pz_add(acc, twisted_series_eval(col, z[ell - 1]));
  }
  return acc;
}

TensorRowLawReport tensor_row_law_report(const TensorRows& rows) {
  const TensorModule& tm = rows.tm;
  uint32_t r = tm.mod.r(), d = tm.d(), k = tm.k;
  long long q = (long long)tm.mod.F->q;

  TensorRowLawReport rep;
  for (size_t n = 0; n <= rows.n_max; ++n) {
    long long s, j;
    if (n == 0) {
      s = -1;
      j = r;
    } else {
      s = ((long long)n - 1) / r;
      j = ((long long)n - 1) % r + 1;
    }
    for (uint32_t ell = 1; ell <= d; ++ell) {
      ++rep.streams_checked;
      const auto& st = rows.rows[n][ell - 1];

      long long u, v;
      if (ell == d) {
        u = k;
        v = r - 1;
      } else {
        u = ((long long)ell - 1) / r;
        v = r - ((long long)ell - (long long)r * u);
      }
      long long jbar = (j > v) ? j - v : (long long)r - (v - j);
      long long sbar = (j > v) ? s : s - 1;
      long long want = sbar + 1 + (long long)k * (long long)n + u;
      if (rows.pivot_deg[n][ell - 1] != want ||
          rows.pivot_coord[n][ell - 1] != (uint32_t)jbar)
        ++rep.degree_violations;
      for (long long i = 1; i < jbar; ++i)
        if (!(eff_deg(st[jbar - 1]) >= eff_deg(st[i - 1])))
          ++rep.ordering_violations;
      for (long long i = jbar + 1; i <= (long long)r; ++i)
        if (!(eff_deg(st[jbar - 1]) > eff_deg(st[i - 1])))
          ++rep.ordering_violations;

      // Gauss norm of the stream: the product law composed from the t-shift
      // powers and the companion-row norm law. The per-coefficient count
      // unfolds the same bound (a Gauss norm is the max over coefficients).
      Rat sb;
      if (ell == d)
        sb = Rat((long long)k) * s_norm(q, (long long)n) +
             fund_row_bound(q, r, 1, (long long)n - 1);
      else
        sb = Rat((long long)k) * s_norm(q, (long long)n - 1) +
             Rat(u) * q_pow(q, (long long)n) +
             fund_row_bound(q, r, (long long)r - v, (long long)n - 1);
      for (uint32_t c = 0; c < r; ++c)
        for (size_t nu = 0; nu < st[c].c.size(); ++nu) {
          LogQ nm = st[c].c[nu].norm_logq();
          if (nm && !(*nm <= sb)) ++rep.coeff_norm_violations;
        }
      LogQ rn = row_gauss_norm(st);
      if (rn && !(*rn <= sb)) ++rep.stream_norm_violations;
    }
  }

  for (size_t m = 0; m < rows.fund.size(); ++m)
    for (uint32_t j = 1; j <= r; ++j) {
      LogQ nm = row_gauss_norm(rows.fund[m][j - 1]);
      Rat b = fund_row_bound(q, r, j, (long long)m);
      if (m == 0) {
        // the first product's rows have these norms exactly
        if (!nm || *nm != b) ++rep.fundamental_norm_violations;
      } else if (nm && !(*nm <= b)) {
        ++rep.fundamental_norm_violations;
      }
    }
  return rep;
}

TMat dual_side_product(const PeriodPackage& pkg, size_t n, long long n_t,
                       const Rat& work_floor) {
  uint32_t r = pkg.mod.r();
  TMat acc = tmat_from_const(mat_identity(r, pz_one(*pkg.mod.F)));
  for (size_t i = n; i >= 1; --i)
    acc = tmat_mul_cap(
        acc, tmat_inv(tmat_twist(pkg.Phi, (long long)i), n_t, work_floor),
        n_t);
  return acc;
}

Mat<Puiseux> tensor_basis_change(const DrinfeldModule& mod) {
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  Mat<Puiseux> Vt(r, r);
  Vt(r - 1, 0) = pz_one(F);
  for (uint32_t j = 2; j <= r; ++j)
    for (uint32_t i = 1; i + j - 1 <= r; ++i)
      Vt(i - 1, j - 1) =
          pz_from_field(F, F.frob_q(mod.k[i + j - 2], 1 - (long long)j));
  return Vt;
}

std::vector<Puiseux> tensor_lie_coordinates(const TensorModule& tm,
                                            const std::vector<TatePoly>& R) {
  const ScalarField& F = *tm.mod.F;
  uint32_t r = tm.mod.r(), k = tm.k, d = tm.d();
  if (R.size() != r)
    fail(ErrKind::Shape, "component count differs from the rank");
  Puiseux th = pz_theta(F);

  std::vector<std::vector<Puiseux>> digits(r);
  for (uint32_t i = 0; i < r; ++i) {
    TatePoly f = R[i];
    long long N = (long long)f.c.size();
    LogQ base;  // scale of the dropped t-range, from the last retained slot
    if (N > 0) {
      base = f.c[N - 1].norm_logq();
      if (!base) base = f.c[N - 1].floor_;
    }
    for (uint32_t nu = 0; nu <= k; ++nu) {
      Puiseux digit;
      if (!f.c.empty()) {
        std::vector<Puiseux> go(f.c.size() > 1 ? f.c.size() - 1 : 0);
        for (size_t m = f.c.size() - 1; m >= 1; --m)
          go[m - 1] = (m + 1 == f.c.size()) ? f.c[m]
                                            : pz_add(f.c[m], pz_mul(th, go[m]));
        digit = go.empty() ? f.c[0] : pz_add(f.c[0], pz_mul(th, go[0]));
        f.c = std::move(go);
      }
      if (base)
        digit = pz_add(digit,
                       pz_zero_prec(&F, *base + Rat(N - (long long)nu)));
      digits[i].push_back(digit);
    }
  }

  std::vector<Puiseux> out(d);
  out[0] = digits[r - 1][k];
  for (uint32_t mu = 1; mu <= k; ++mu)
    for (uint32_t i = 1; i <= r; ++i)
      out[r * (mu - 1) + i] = digits[i - 1][k - mu];
  return out;
}

TensorBasisReport tensor_basis_identity_check(const PeriodPackage& pkg,
                                              size_t n_lo, size_t n_hi) {
  const ScalarField& F = *pkg.mod.F;
  uint32_t r = pkg.mod.r();
  Mat<Puiseux> U =
      mat_mul(mat_transpose(pkg.V), mat_twist(pkg.torsion.B, 1));
  Mat<Puiseux> Uinv = mat_inv_scaled(U, -pkg.floor);
  Mat<Puiseux> Vt = tensor_basis_change(pkg.mod);
  Mat<Puiseux> Vtt = mat_transpose(Vt);
  Mat<Puiseux> W = mat_transpose(mat_inv(mat_twist(Vt, -1)));
  Mat<Puiseux> I = mat_identity(r, pz_one(F));

  TensorBasisReport rep;
  rep.pass_all = true;
  for (size_t n = n_lo; n <= n_hi; ++n) {
    Mat<Puiseux> term =
        mat_mul(mat_mul(mat_twist(Uinv, (long long)n),
                        mat_twist(Vtt, (long long)n)),
                mat_mul(mat_twist(W, (long long)n + 1),
                        mat_twist(U, (long long)n)));
    Mat<Puiseux> diff = mat_sub(term, I);
    rep.n_values.push_back(n);
    rep.dev.push_back(mat_norm_logq(diff));
    if (!mat_is_zero(diff)) rep.pass_all = false;
  }
  return rep;
}

QuasiPeriods quasi_periods(const PeriodPackage& pkg, const Rat& floor) {
  const DrinfeldModule& mod = pkg.mod;
  const ScalarField& F = *mod.F;
  uint32_t r = mod.r();
  long long q = (long long)F.q;

  QuasiPeriods out;
  if (r < 2) return out;

  // Deepen the exponential coefficients so every series term clears the
  // requested floor after twisting and the q^m-th power of theta * lambda.
  size_t M = pkg.n_tau;
  Rat lmax(0);
  for (const Puiseux& l : pkg.lambda) {
    LogQ nm = l.norm_logq();
    if (nm && *nm > lmax) lmax = *nm;
  }
  lmax += 1;
  Rat deep =
      (floor - q_pow(q, (long long)M) * lmax) / q_pow(q, (long long)r - 1) - 1;
  std::vector<Puiseux> ec = exp_coeffs(mod, M, deep);
  Puiseux th = pz_theta(F);

  for (uint32_t ell = 1; ell < r; ++ell) {
    std::vector<Puiseux> c(M + 1);
    for (size_t m = ell; m <= M; ++m)
      c[m] = pz_mul(pz_twist(ec[m - ell], (long long)ell),
                    pz_inv(pz_sub(pz_term(F, 1, q_pow(q, (long long)m)), th),
                           deep));
    std::vector<Puiseux> sr, ar;
    for (uint32_t i = 0; i < r; ++i) {
      Puiseux a = twisted_series_eval(c, pkg.lambda[i]);
      Puiseux b = tp_eval(tp_twist(pkg.f[i], (long long)ell), th);
      sr.push_back(a);
      ar.push_back(b);
      out.disagreement = logq_max(out.disagreement, pz_sub(a, b).norm_logq());
      Puiseux fr = pz_sub(twisted_series_eval(c, pz_mul(th, pkg.lambda[i])),
                          pz_mul(th, a));
      out.functional_residual =
          logq_max(out.functional_residual, fr.norm_logq());
    }
    out.series_route.push_back(std::move(sr));
    out.agf_route.push_back(std::move(ar));
  }
  return out;
}

TensorTheoremReport verify_tensor_theorem(
    const PeriodPackage& pkg, const TensorRows& rows,
    const std::vector<std::vector<Puiseux>>& zs, long long deg_cap) {
  const TensorModule& tm = rows.tm;
  const ScalarField& F = *pkg.mod.F;
  uint32_t r = pkg.mod.r(), d = tm.d(), k = tm.k;
  if (tm.mod.F != pkg.mod.F || tm.mod.k != pkg.mod.k)
    fail(ErrKind::Shape, "row module differs from the period package");

  CarlitzPack cp = carlitz_specials(F, pkg.n_t, pkg.floor);
  std::vector<Mat<Puiseux>> P = tensor_log_coeffs(tm, rows.n_max, pkg.floor);
  QuasiPeriods qp = quasi_periods(pkg, pkg.floor);
  TMat psi_m = tmat_twist(mat_transpose(pkg.Psi), -1);

  TatePoly omega_k = cp.omega;
  Puiseux pit_k = cp.pitilde;
  for (uint32_t i = 1; i < k; ++i) {
    omega_k = tp_mul_cap(omega_k, cp.omega, pkg.n_t);
    pit_k = pz_mul(pit_k, cp.pitilde);
  }

  TatePoly tmt = tp_t_minus(pz_theta(F));
  long long cap = std::min(deg_cap, pkg.n_t);

  TensorTheoremReport rep;
  rep.cleared_ok = true;
  rep.z_ok = true;

  for (uint32_t j = 1; j <= r; ++j) {
    uint32_t coord = d - (j - 1);
    std::vector<std::vector<Puiseux>> a(P.size(), std::vector<Puiseux>(d));
    for (size_t n = 0; n < P.size(); ++n)
      for (uint32_t ell = 1; ell <= d; ++ell)
        a[n][ell - 1] = P[n](coord - 1, ell - 1);
    std::vector<TatePoly> lhs = varphi_tens_forward(rows, a);

    const std::vector<Puiseux>& rv =
        (j == 1) ? pkg.lambda : qp.agf_route[r - j];
    std::vector<TatePoly> R(r);
    for (uint32_t c = 0; c < r; ++c) {
      for (uint32_t i = 0; i < r; ++i)
        R[c] = tp_add(R[c], tp_scale(psi_m(i, c), rv[i]));
      R[c] = tp_scale(R[c], pit_k);
    }

    LogQ resj;
    bool okj = true;
    TatePoly front = tp_mul_cap(tmt, omega_k, pkg.n_t);
    for (uint32_t c = 0; c < r; ++c) {
      TatePoly t1 = tp_mul_cap(front, lhs[c], pkg.n_t);
      TatePoly lc = (j == 1) ? tp_add(t1, R[c]) : tp_sub(t1, R[c]);
      for (long long nu = 0; nu <= cap; ++nu) {
        Puiseux cc = tp_coeff(lc, (size_t)nu);
        resj = logq_max(resj, cc.norm_logq());
        if (!cc.is_zero()) okj = false;
      }
    }
    rep.cleared_residual.push_back(resj);
    if (!okj) rep.cleared_ok = false;

    // Divide the row vector back by the cleared factor and peel once; the
    // recovered streams serve every z.
    TatePoly denom =
        tp_mul_cap((j == 1) ? tp_neg(tmt) : tmt, omega_k, pkg.n_t);
    TatePoly dinv = tp_inv(denom, pkg.n_t, pkg.floor);
    std::vector<TatePoly> G(r);
    for (uint32_t c = 0; c < r; ++c) G[c] = tp_mul_cap(R[c], dinv, pkg.n_t);
    std::vector<std::vector<Puiseux>> arec = varphi_tens_inverse(rows, G);

    for (const auto& z : zs) {
      Puiseux mel;
      for (uint32_t ell = 1; ell <= d; ++ell) {
        if (z[ell - 1].is_exact_zero()) continue;
        std::vector<Puiseux> col;
        for (size_t n = 0; n < arec.size(); ++n)
          col.push_back(arec[n][ell - 1]);
        mel = pz_add(mel, twisted_series_eval(col, z[ell - 1]));
      }
      Puiseux dir = tensor_log_value(tm, P, z, coord);
      Puiseux diffv = pz_sub(mel, dir);
      rep.z_mellin.push_back(mel);
      rep.z_direct.push_back(dir);
      rep.z_residuals.push_back(diffv.norm_logq());
      if (!diffv.is_zero()) rep.z_ok = false;
    }
  }
  return rep;
}

TensorDeterminant tensor_special_determinant(const DrinfeldModule& mod,
                                             uint32_t k, size_t n_tau,
                                             const Rat& floor) {
  const ScalarField& F = *mod.F;
  TensorDeterminant out;
  out.partner = partner_module(mod);
  TensorModule tm = make_tensor(out.partner, k);
  std::vector<Mat<Puiseux>> P = tensor_log_coeffs(tm, n_tau, floor);

  out.entries = Mat<Puiseux>(2, 2);
  for (uint32_t a = 0; a < 2; ++a)
    for (uint32_t b = 0; b < 2; ++b) {
      std::vector<Puiseux> z(tm.d());
      z[2 * k - 1 + b] = pz_one(F);
      out.entries(a, b) = tensor_log_value(tm, P, z, 2 * k + a);
    }
  out.det_value = pz_sub(pz_mul(out.entries(0, 0), out.entries(1, 1)),
                         pz_mul(out.entries(0, 1), out.entries(1, 0)));
  return out;
}

}  // namespace dmlab
