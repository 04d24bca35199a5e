#include "dmlab/tate.hpp"

#include <algorithm>

namespace dmlab {
namespace {

void trim(TatePoly& f) {
  while (!f.c.empty() && f.c.back().is_exact_zero()) f.c.pop_back();
}

}  // namespace

TatePoly tp_zero() { return {}; }

TatePoly tp_from_coeffs(std::vector<Puiseux> c) {
  TatePoly f{std::move(c)};
  trim(f);
  return f;
}

TatePoly tp_const(const Puiseux& x) { return tp_from_coeffs({x}); }

TatePoly tp_monomial(const Puiseux& coeff, size_t d) {
  std::vector<Puiseux> c(d + 1);
  c[d] = coeff;
  return tp_from_coeffs(std::move(c));
}

TatePoly tp_t(const ScalarField& F) { return tp_monomial(pz_one(F), 1); }

TatePoly tp_t_minus(const Puiseux& x) {
  return tp_from_coeffs({pz_neg(x), pz_one(*x.F)});
}

Puiseux tp_coeff(const TatePoly& f, size_t i) {
  return i < f.c.size() ? f.c[i] : pz_zero();
}

TatePoly tp_add(const TatePoly& x, const TatePoly& y) {
  TatePoly r;
  r.c.resize(std::max(x.c.size(), y.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = pz_add(tp_coeff(x, i), tp_coeff(y, i));
  trim(r);
  return r;
}

TatePoly tp_neg(const TatePoly& x) {
  TatePoly r = x;
  for (auto& v : r.c)
    if (!v.is_exact_zero()) v = pz_neg(v);
  return r;
}

TatePoly tp_sub(const TatePoly& x, const TatePoly& y) {
  return tp_add(x, tp_neg(y));
}

TatePoly tp_mul_cap(const TatePoly& x, const TatePoly& y, long long nt) {
  if (x.c.empty() || y.c.empty()) return {};
  size_t len = x.c.size() + y.c.size() - 1;
  if (nt >= 0) len = std::min(len, size_t(nt) + 1);
  TatePoly r;
  r.c.resize(len);
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i].is_exact_zero()) continue;
    for (size_t j = 0; j < y.c.size() && i + j < len; ++j)
      r.c[i + j] = pz_add(r.c[i + j], pz_mul(x.c[i], y.c[j]));
  }
  trim(r);
  return r;
}

TatePoly tp_mul(const TatePoly& x, const TatePoly& y) {
  return tp_mul_cap(x, y, -1);
}

TatePoly tp_scale(const TatePoly& x, const Puiseux& s) {
  TatePoly r = x;
  for (auto& v : r.c) v = pz_mul(v, s);
  trim(r);
  return r;
}

TatePoly tp_twist(const TatePoly& x, long long j) {
  TatePoly r = x;
  for (auto& v : r.c) v = pz_twist(v, j);
  return r;
}

TatePoly tp_truncate_deg(const TatePoly& x, long long nt) {
  TatePoly r = x;
  if (nt < 0) {
    r.c.clear();
  } else if (r.c.size() > size_t(nt) + 1) {
    r.c.resize(size_t(nt) + 1);
  }
  trim(r);
  return r;
}

TatePoly tp_truncate_floor(const TatePoly& x, const Rat& fl) {
  TatePoly r = x;
  for (auto& v : r.c) v = pz_truncate(v, fl);
  return r;
}

LogQ tp_norm(const TatePoly& x) {
  LogQ m;
  for (const auto& v : x.c) m = logq_max(m, v.norm_logq());
  return m;
}

TatePoly tp_inv(const TatePoly& x, long long nt, std::optional<Rat> work_floor) {
  if (nt < 0) fail(ErrKind::Shape, "tate inverse: negative truncation degree");
  if (x.c.empty()) fail(ErrKind::DivByZero, "tate inverse of zero");
  Puiseux n0 = pz_inv(x.c[0], work_floor);
  TatePoly r;
  r.c.resize(size_t(nt) + 1);
  r.c[0] = n0;
  for (long long k = 1; k <= nt; ++k) {
    Puiseux s = pz_zero();
    for (long long i = 1; i <= k && size_t(i) < x.c.size(); ++i)
      s = pz_add(s, pz_mul(x.c[i], r.c[k - i]));
    r.c[k] = pz_neg(pz_mul(n0, s));
  }
  trim(r);
  return r;
}

Puiseux tp_eval(const TatePoly& f, const Puiseux& at, bool series_tail) {
  if (f.c.empty()) return pz_zero();
  if (!series_tail || at.is_exact_zero()) {
    Puiseux r = pz_zero();
    for (size_t i = f.c.size(); i-- > 0;)
      r = pz_add(pz_mul(r, at), f.c[i]);
    return r;
  }
  if (at.is_zero())
    fail(ErrKind::Domain, "series evaluation at a zero-to-precision point");
  Rat lx = at.lead_exp();
  // per-term bounds: coefficient norm (or floor for term-free) + i*|at|
  std::vector<LogQ> v(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) {
    LogQ b = f.c[i].norm_logq();
    if (!b && f.c[i].floor_) b = f.c[i].floor_;
    if (b) v[i] = *b + Rat(BigInt(i)) * lx;
  }
  size_t peak = 0;
  bool any = false;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] && (!any || *v[i] > *v[peak])) {
      peak = i;
      any = true;
    }
  if (!any) {
    // no information at all: sum collapses to a floored zero
    Puiseux r = pz_zero();
    for (size_t i = 0; i < f.c.size(); ++i)
      r = pz_add(r, pz_mul(f.c[i], pz_pow(at, (long long)i)));
    return r;
  }
  if (peak + 1 >= v.size())
    fail(ErrKind::Divergence,
         "series evaluation: no decay past the last retained term");
  // exactly-zero terms contribute nothing; compare set entries only
  std::optional<Rat> prev = v[peak];
  for (size_t i = peak + 1; i < v.size(); ++i) {
    if (!v[i]) continue;
    if (!(*v[i] <= *prev))
      fail(ErrKind::Divergence,
           "series evaluation: term norms grow past the peak");
    prev = v[i];
  }
  Puiseux sum = pz_zero();
  Puiseux xp = pz_one(*at.F);
  for (size_t i = 0; i < f.c.size(); ++i) {
    sum = pz_add(sum, pz_mul(f.c[i], xp));
    if (i + 1 < f.c.size()) xp = pz_mul(xp, at);
  }
  // certified tail bound: the last retained term's norm
  if (v.back()) sum = pz_truncate(sum, *v.back());
  return sum;
}

std::string tp_str(const TatePoly& f) {
  if (f.c.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i].is_exact_zero()) continue;
    if (!s.empty()) s += "  +  ";
    s += "t^" + std::to_string(i) + "*(" + pz_str(f.c[i]) + ")";
  }
  return s.empty() ? "0" : s;
}

TMat tmat_from_const(const Mat<Puiseux>& m) {
  TMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i)
    if (!m.a[i].is_exact_zero()) r.a[i] = tp_const(m.a[i]);
  return r;
}

Mat<Puiseux> tmat_coeff_slice(const TMat& m, size_t i) {
  Mat<Puiseux> r(m.rows, m.cols);
  for (size_t k = 0; k < m.a.size(); ++k) r.a[k] = tp_coeff(m.a[k], i);
  return r;
}

TMat tmat_mul_cap(const TMat& x, const TMat& y, long long nt) {
  if (x.cols != y.rows) fail(ErrKind::Shape, "tate matrix mul: dimension mismatch");
  TMat r(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x(i, k).is_exact_zero()) continue;
      for (size_t j = 0; j < y.cols; ++j)
        r(i, j) = tp_add(r(i, j), tp_mul_cap(x(i, k), y(k, j), nt));
    }
  return r;
}

TMat tmat_twist(const TMat& x, long long j) {
  TMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = tp_twist(x.a[i], j);
  return r;
}

TMat tmat_truncate_floor(const TMat& x, const Rat& fl) {
  TMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = tp_truncate_floor(x.a[i], fl);
  return r;
}

LogQ tmat_norm(const TMat& x) {
  LogQ m;
  for (const auto& v : x.a) m = logq_max(m, tp_norm(v));
  return m;
}

bool tmat_is_zero(const TMat& x) {
  for (const auto& v : x.a)
    if (!v.is_zero()) return false;
  return true;
}

TMat tmat_inv(const TMat& m, long long nt, std::optional<Rat> work_floor) {
  if (nt < 0) fail(ErrKind::Shape, "tate matrix inverse: negative truncation degree");
  if (m.rows != m.cols) fail(ErrKind::Shape, "tate matrix inverse: not square");
  size_t n = m.rows;
  long long md = 0;
  for (const auto& v : m.a) md = std::max(md, v.deg());
  Mat<Puiseux> n0 = mat_inv(tmat_coeff_slice(m, 0), work_floor);
  std::vector<Mat<Puiseux>> N(size_t(nt) + 1);
  N[0] = n0;
  for (long long k = 1; k <= nt; ++k) {
    Mat<Puiseux> s(n, n);
    bool nonzero = false;
    for (long long i = 1; i <= std::min(k, md); ++i) {
      Mat<Puiseux> mi = tmat_coeff_slice(m, size_t(i));
      if (mat_is_zero(mi)) continue;
      s = mat_add(s, mat_mul(mi, N[size_t(k - i)]));
      nonzero = true;
    }
    N[size_t(k)] = Mat<Puiseux>(n, n);
    if (nonzero) {
      Mat<Puiseux> t = mat_mul(n0, s);
      for (size_t e = 0; e < t.a.size(); ++e)
        N[size_t(k)].a[e] = pz_neg(t.a[e]);
    }
  }
  TMat r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Puiseux> cs(size_t(nt) + 1);
      for (long long k = 0; k <= nt; ++k) cs[size_t(k)] = N[size_t(k)](i, j);
      r(i, j) = tp_from_coeffs(std::move(cs));
    }
  return r;
}

}  // namespace dmlab
