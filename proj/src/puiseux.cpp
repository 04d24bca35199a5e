#include "dmlab/puiseux.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace dmlab {
namespace {

constexpr size_t kDenseCap = size_t(1) << 22;

long long addl(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrKind::Internal, "exponent lattice overflow (add)");
  return r;
}

long long mull(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrKind::Internal, "exponent lattice overflow (mul)");
  return r;
}

long long gcdll(long long a, long long b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

const ScalarField* join_fields(const Puiseux& x, const Puiseux& y) {
  if (x.F && y.F && x.F != y.F)
    fail(ErrKind::Shape, "operands over different scalar fields");
  return x.F ? x.F : y.F;
}

// Smallest dense index k with (lo + k*g)/den strictly above the floor;
// 0 when no floor. Indices below it are dropped.
long long floor_cut_index(const std::optional<Rat>& fl, long long lo,
                          long long g, long long den) {
  if (!fl) return 0;
  // need den_f*(lo + k*g) > num_f*den  <=>  k*g*den_f > num_f*den - den_f*lo
  BigInt fn = numerator(*fl), fd = denominator(*fl);
  BigInt t = fn * den - fd * lo;
  BigInt d = fd * g;  // > 0
  BigInt k = t / d;
  if (t % d != 0 && t < 0) k -= 1;  // floor division
  k += 1;
  if (k < 0) return 0;
  if (k > (std::numeric_limits<long long>::max)())
    fail(ErrKind::Precision, "floor above every representable exponent");
  return k.convert_to<long long>();
}

// Restores all invariants from a possibly loose representation.
void canonicalize(Puiseux& x) {
  // drop terms at or below the floor
  if (x.floor_ && !x.c.empty()) {
    long long cut = floor_cut_index(x.floor_, x.lo, x.st, x.den);
    if (cut > 0) {
      if (size_t(cut) >= x.c.size()) {
        x.c.clear();
      } else {
        x.c.erase(x.c.begin(), x.c.begin() + cut);
        x.lo = addl(x.lo, mull(cut, x.st));
      }
    }
  }
  // trim zero ends
  size_t b = 0, e = x.c.size();
  while (b < e && x.c[b] == 0) ++b;
  while (e > b && x.c[e - 1] == 0) --e;
  if (b > 0 || e < x.c.size()) {
    x.lo = addl(x.lo, mull((long long)b, x.st));
    x.c = std::vector<uint32_t>(x.c.begin() + b, x.c.begin() + e);
  }
  if (x.c.empty()) {
    x.den = 1;
    x.lo = 0;
    x.st = 1;
    return;
  }
  if (x.c.size() == 1) {
    x.st = 1;
    long long g = gcdll(x.lo, x.den);
    if (g > 1) {
      x.lo /= g;
      x.den /= g;
    }
    return;
  }
  // fold the gcd of support indices into the stride
  long long d = 0;
  for (size_t i = 1; i < x.c.size(); ++i)
    if (x.c[i] != 0) d = std::gcd(d, (long long)i);
  if (d > 1) {
    std::vector<uint32_t> nc;
    nc.reserve(x.c.size() / d + 1);
    for (size_t i = 0; i < x.c.size(); i += d) nc.push_back(x.c[i]);
    x.c = std::move(nc);
    x.st = mull(x.st, d);
  }
  long long g = std::gcd(gcdll(x.lo, x.st), x.den);
  if (g > 1) {
    x.den /= g;
    x.lo /= g;
    x.st /= g;
  }
}

}  // namespace

Puiseux pz_zero() { return Puiseux{}; }

Puiseux pz_zero_prec(const ScalarField* F, const Rat& floor) {
  Puiseux z;
  z.F = F;
  z.floor_ = floor;
  return z;
}

Puiseux pz_term(const ScalarField& F, uint32_t coeff, const Rat& e,
                std::optional<Rat> floor) {
  Puiseux x;
  x.F = &F;
  x.floor_ = std::move(floor);
  if (coeff != 0) {
    BigInt n = numerator(e), d = denominator(e);
    long long cap = (std::numeric_limits<long long>::max)();
    if (n > cap || n < -BigInt(cap) || d > cap)
      fail(ErrKind::Internal, "exponent outside the representable lattice");
    x.lo = n.convert_to<long long>();
    x.den = d.convert_to<long long>();
    x.c = {coeff};
  }
  canonicalize(x);
  return x;
}

Puiseux pz_one(const ScalarField& F) { return pz_term(F, 1, Rat(0)); }

Puiseux pz_theta(const ScalarField& F) { return pz_term(F, 1, Rat(1)); }

Puiseux pz_from_field(const ScalarField& F, uint32_t idx) {
  return pz_term(F, idx, Rat(0));
}

Puiseux pz_add(const Puiseux& x, const Puiseux& y) {
  if (x.is_exact_zero()) return y;
  if (y.is_exact_zero()) return x;
  const ScalarField* F = join_fields(x, y);
  std::optional<Rat> fl = logq_max(x.floor_, y.floor_);
  if (x.c.empty() && y.c.empty()) return pz_zero_prec(F, *fl);
  if (x.c.empty() || y.c.empty()) {
    Puiseux r = x.c.empty() ? y : x;
    r.F = F;
    r.floor_ = fl;
    canonicalize(r);
    return r;
  }
  long long L = mull(x.den / gcdll(x.den, y.den), y.den);
  long long mx = L / x.den, my = L / y.den;
  long long lox = mull(x.lo, mx), stx = mull(x.st, mx);
  long long loy = mull(y.lo, my), sty = mull(y.st, my);
  long long gx = x.c.size() > 1 ? stx : 0;
  long long gy = y.c.size() > 1 ? sty : 0;
  long long g = std::gcd(std::gcd(gx, gy), lox > loy ? lox - loy : loy - lox);
  if (g == 0) g = 1;
  long long lo = std::min(lox, loy);
  long long hix = addl(lox, mull((long long)(x.c.size() - 1), stx));
  long long hiy = addl(loy, mull((long long)(y.c.size() - 1), sty));
  long long hi = std::max(hix, hiy);
  long long len = (hi - lo) / g + 1;
  if (len < 0 || size_t(len) > kDenseCap)
    fail(ErrKind::Size, "series too dense (add)");
  Puiseux r;
  r.F = F;
  r.den = L;
  r.lo = lo;
  r.st = g;
  r.floor_ = fl;
  r.c.assign(size_t(len), 0);
  for (size_t i = 0; i < x.c.size(); ++i)
    if (x.c[i]) {
      size_t k = size_t((lox + (long long)i * stx - lo) / g);
      r.c[k] = F->add(r.c[k], x.c[i]);
    }
  for (size_t i = 0; i < y.c.size(); ++i)
    if (y.c[i]) {
      size_t k = size_t((loy + (long long)i * sty - lo) / g);
      r.c[k] = F->add(r.c[k], y.c[i]);
    }
  canonicalize(r);
  return r;
}

Puiseux pz_neg(const Puiseux& x) {
  Puiseux r = x;
  for (auto& v : r.c) v = x.F->neg(v);
  return r;
}

Puiseux pz_sub(const Puiseux& x, const Puiseux& y) {
  return pz_add(x, y.is_exact_zero() ? y : pz_neg(y));
}

Puiseux pz_mul(const Puiseux& x, const Puiseux& y) {
  if (x.is_exact_zero() || y.is_exact_zero()) return pz_zero();
  const ScalarField* F = join_fields(x, y);
  // floor: max(floor_x + lead_y, floor_y + lead_x), lead read as the floor
  // for a term-free operand
  std::optional<Rat> fl;
  auto lead = [](const Puiseux& v) -> Rat {
    return v.c.empty() ? *v.floor_ : v.lead_exp();
  };
  if (x.floor_) fl = logq_max(fl, std::optional<Rat>(*x.floor_ + lead(y)));
  if (y.floor_) fl = logq_max(fl, std::optional<Rat>(*y.floor_ + lead(x)));
  if (x.c.empty() || y.c.empty()) return pz_zero_prec(F, *fl);
  long long L = mull(x.den / gcdll(x.den, y.den), y.den);
  long long mx = L / x.den, my = L / y.den;
  long long lox = mull(x.lo, mx), stx = mull(x.st, mx);
  long long loy = mull(y.lo, my), sty = mull(y.st, my);
  long long gx = x.c.size() > 1 ? stx : 0;
  long long gy = y.c.size() > 1 ? sty : 0;
  long long g = std::gcd(gx, gy);
  if (g == 0) g = 1;
  long long lo = addl(lox, loy);
  long long span = addl(mull((long long)(x.c.size() - 1), stx),
                        mull((long long)(y.c.size() - 1), sty));
  long long len = span / g + 1;
  long long cut = floor_cut_index(fl, lo, g, L);
  if (cut >= len) return pz_zero_prec(F, *fl);
  // only the window above the floor cut is materialized
  if (len - cut < 0 || size_t(len - cut) > kDenseCap)
    fail(ErrKind::Size, "series too dense (mul)");
  Puiseux r;
  r.F = F;
  r.den = L;
  r.lo = addl(lo, mull(cut, g));
  r.st = g;
  r.floor_ = fl;
  r.c.assign(size_t(len - cut), 0);
  long long sx = stx / g, sy = sty / g;
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (!x.c[i]) continue;
    long long base = (long long)i * sx - cut;
    for (size_t j = 0; j < y.c.size(); ++j) {
      if (!y.c[j]) continue;
      long long k = base + (long long)j * sy;
      if (k < 0) continue;
      r.c[size_t(k)] = F->add(r.c[size_t(k)], F->mul(x.c[i], y.c[j]));
    }
  }
  canonicalize(r);
  return r;
}

Puiseux pz_scale(const Puiseux& x, uint32_t k) {
  if (x.is_exact_zero()) return x;
  if (k == 0) return pz_zero();  // exact scalar zero absorbs the floor
  Puiseux r = x;
  for (auto& v : r.c) v = x.F->mul(v, k);
  return r;
}

Puiseux pz_truncate(const Puiseux& x, const Rat& floor) {
  // A zero that never touched a field has nothing to drop; it stays exact.
  // (Zeros with a field keep the stamp: they may stand for a cancelled sum
  // whose dropped tail the caller is accounting for.)
  if (!x.F) return x;
  Puiseux r = x;
  r.floor_ = logq_max(r.floor_, std::optional<Rat>(floor));
  canonicalize(r);
  return r;
}

Puiseux pz_inv(const Puiseux& x, std::optional<Rat> work_floor) {
  if (x.is_exact_zero()) fail(ErrKind::DivByZero, "inverse of exact zero");
  if (x.c.empty())
    fail(ErrKind::Precision, "inverse of a zero-to-precision element");
  const ScalarField& F = *x.F;
  Rat le = x.lead_exp();
  uint32_t lc = x.c.back();
  if (x.c.size() == 1) {
    std::optional<Rat> fl;
    if (x.floor_) fl = *x.floor_ - 2 * le;
    return pz_term(F, F.inv(lc), -le, fl);
  }
  std::optional<Rat> fl;
  if (x.floor_)
    fl = *x.floor_ - 2 * le;
  else if (work_floor)
    fl = *work_floor;
  else
    fail(ErrKind::Precision,
         "inverse of an exact multi-term series needs a working floor");
  // x = l*(1+u) with |u| < 1; Newton for (1+u)^{-1} at relative floor fl + le.
  Rat frel = *fl + le;
  Puiseux v = pz_truncate(pz_mul(x, pz_term(F, F.inv(lc), -le)), frel);
  Puiseux two = pz_from_field(F, F.add(1, 1));
  Puiseux y = pz_term(F, 1, Rat(0), frel);
  for (int it = 0; it < 64; ++it) {
    Puiseux resid = pz_sub(pz_mul(v, y), pz_one(F));
    if (resid.is_zero()) {
      Puiseux r = pz_mul(y, pz_term(F, F.inv(lc), -le));
      r.floor_ = fl;
      canonicalize(r);
      return r;
    }
    y = pz_truncate(pz_sub(pz_mul(y, two), pz_mul(pz_mul(y, y), v)), frel);
  }
  fail(ErrKind::Internal, "series inversion failed to converge");
}

Puiseux pz_pow(const Puiseux& x, long long m, std::optional<Rat> work_floor) {
  if (m < 0) return pz_pow(pz_inv(x, std::move(work_floor)), -m);
  if (m == 0) {
    if (x.is_exact_zero()) fail(ErrKind::DivByZero, "0^0");
    return pz_one(*x.F);
  }
  Puiseux base = x, r;
  bool have = false;
  while (m) {
    if (m & 1) {
      r = have ? pz_mul(r, base) : base;
      have = true;
    }
    m >>= 1;
    if (m) base = pz_mul(base, base);
  }
  return r;
}

Puiseux pz_div(const Puiseux& x, const Puiseux& y, std::optional<Rat> work_floor) {
  return pz_mul(x, pz_inv(y, std::move(work_floor)));
}

Puiseux pz_twist(const Puiseux& x, long long j) {
  if (j == 0 || x.is_exact_zero()) return x;
  const ScalarField& F = *x.F;
  long long f = 1;
  for (long long i = 0; i < (j >= 0 ? j : -j); ++i) f = mull(f, (long long)F.q);
  Puiseux r = x;
  if (j >= 0) {
    r.lo = mull(r.lo, f);
    r.st = mull(r.st, f);
  } else {
    r.den = mull(r.den, f);
  }
  for (auto& v : r.c) v = F.frob_q(v, j);
  if (r.floor_) r.floor_ = *r.floor_ * q_pow((long long)F.q, j);
  canonicalize(r);
  return r;
}

bool pz_eq(const Puiseux& x, const Puiseux& y) {
  return x.F == y.F && x.den == y.den && x.lo == y.lo && x.st == y.st &&
         x.c == y.c && x.floor_ == y.floor_;
}

uint32_t pz_coeff(const Puiseux& x, const Rat& e) {
  if (x.c.empty()) return 0;
  BigInt n = numerator(e) * x.den;
  BigInt d = denominator(e);
  if (d != 1) {
    if (n % d != 0) return 0;
    n /= d;
  }
  BigInt k = n - x.lo;
  if (k < 0 || k % x.st != 0) return 0;
  k /= x.st;
  if (k >= BigInt(x.c.size())) return 0;
  return x.c[k.convert_to<size_t>()];
}

std::vector<std::pair<Rat, uint32_t>> pz_terms_desc(const Puiseux& x) {
  std::vector<std::pair<Rat, uint32_t>> out;
  for (size_t i = x.c.size(); i-- > 0;)
    if (x.c[i]) out.emplace_back(x.exp_at(i), x.c[i]);
  return out;
}

std::string pz_str(const Puiseux& x) {
  std::string s;
  if (x.c.empty()) {
    s = "0";
  } else {
    bool first = true;
    for (auto& [e, v] : pz_terms_desc(x)) {
      if (!first) s += " + ";
      first = false;
      s += "(" + x.F->elem_str(v) + ")";
      if (e != 0) s += "*T^" + rat_str(e);
    }
  }
  if (x.floor_) s += " [floor " + rat_str(*x.floor_) + "]";
  return s;
}

}  // namespace dmlab
