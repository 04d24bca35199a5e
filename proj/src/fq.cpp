#include "dmlab/fq.hpp"

#include <algorithm>
#include <numeric>

namespace dmlab {
namespace {

// Dense polynomials over F_p, used only for field construction.
using PolyP = std::vector<uint32_t>;

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP poly_mulmod(const PolyP& x, const PolyP& y, const PolyP& mod, uint32_t p) {
  if (x.empty() || y.empty()) return {};
  std::vector<uint64_t> acc(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < y.size(); ++j)
      acc[i + j] = (acc[i + j] + uint64_t(x[i]) * y[j]) % p;
  }
  // reduce mod the monic modulus
  size_t m = mod.size() - 1;
  for (size_t i = acc.size(); i-- > m;) {
    uint64_t c = acc[i] % p;
    if (!c) continue;
    acc[i] = 0;
    for (size_t j = 0; j < m; ++j) {
      uint64_t sub = (c * mod[j]) % p;
      acc[i - m + j] = (acc[i - m + j] + p - sub) % p;
    }
  }
  PolyP r(acc.begin(), acc.begin() + std::min(acc.size(), m));
  for (auto& c : r) c %= p;
  trim(r);
  return r;
}

PolyP poly_powmod(PolyP base, BigInt e, const PolyP& mod, uint32_t p) {
  PolyP r{1};
  while (e > 0) {
    if ((e & 1) != 0) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

PolyP poly_gcd(PolyP x, PolyP y, uint32_t p) {
  auto inv_mod_p = [p](uint32_t c) {
    uint32_t r = 1, b = c, e = p - 2;
    while (e) {
      if (e & 1) r = uint32_t((uint64_t(r) * b) % p);
      b = uint32_t((uint64_t(b) * b) % p);
      e >>= 1;
    }
    return r;
  };
  trim(x);
  trim(y);
  while (!y.empty()) {
    // x mod y
    uint32_t ilead = inv_mod_p(y.back());
    while (x.size() >= y.size()) {
      uint32_t c = uint32_t((uint64_t(x.back()) * ilead) % p);
      size_t off = x.size() - y.size();
      for (size_t j = 0; j < y.size(); ++j) {
        uint64_t sub = (uint64_t(c) * y[j]) % p;
        x[off + j] = uint32_t((x[off + j] + p - sub) % p);
      }
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return x;
}

std::vector<uint64_t> prime_factors(uint64_t m) {
  std::vector<uint64_t> fs;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) fs.push_back(m);
  return fs;
}

bool irreducible(const PolyP& f, uint32_t p) {
  uint32_t m = uint32_t(f.size() - 1);
  PolyP x{0, 1};
  // x^(p^m) == x mod f
  BigInt pm = 1;
  for (uint32_t i = 0; i < m; ++i) pm *= p;
  PolyP t = poly_powmod(x, pm, f, p);
  PolyP xr = x;
  trim(xr);
  if (t != xr) return false;
  for (uint64_t l : prime_factors(m)) {
    BigInt pe = 1;
    for (uint32_t i = 0; i < m / l; ++i) pe *= p;
    PolyP u = poly_powmod(x, pe, f, p);
    // gcd(u - x, f) must be 1
    PolyP diff = u;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    PolyP g = poly_gcd(diff, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

uint32_t ScalarField::add(uint32_t x, uint32_t y) const {
  if (small_add_) return add_tab_[size_t(x) * n + y];
  uint32_t r = 0;
  uint64_t mult = 1;
  const uint8_t* dx = &digits_[size_t(x) * deg];
  const uint8_t* dy = &digits_[size_t(y) * deg];
  for (uint32_t i = 0; i < deg; ++i) {
    uint32_t c = uint32_t(dx[i]) + dy[i];
    if (c >= p) c -= p;
    r += uint32_t(c * mult);
    mult *= p;
  }
  return r;
}

uint32_t ScalarField::pow(uint32_t x, const BigInt& e) const {
  if (x == 0) {
    if (e < 0) fail(ErrKind::DivByZero, "0 to a negative power");
    return e == 0 ? 1 : 0;
  }
  BigInt m = e % BigInt(n - 1);
  if (m < 0) m += n - 1;
  uint64_t em = m.convert_to<uint64_t>();
  return alog_[(uint64_t(dlog_[x]) * (em % (n - 1))) % (n - 1)];
}

uint64_t ScalarField::elem_order(uint32_t x) const {
  if (x == 0) fail(ErrKind::DivByZero, "order of zero");
  uint64_t e = dlog_[x];
  return (n - 1) / std::gcd(n - 1, e);
}

std::vector<uint32_t> ScalarField::coords(uint32_t x) const {
  std::vector<uint32_t> c(deg);
  for (uint32_t i = 0; i < deg; ++i) c[i] = digits_[size_t(x) * deg + i];
  return c;
}

uint32_t ScalarField::from_coords(const std::vector<uint32_t>& c) const {
  if (c.size() > deg) fail(ErrKind::Shape, "coordinate list longer than degree");
  uint64_t v = 0, mult = 1;
  for (size_t i = 0; i < deg; ++i) {
    uint32_t d = i < c.size() ? c[i] % p : 0;
    v += d * mult;
    mult *= p;
  }
  return uint32_t(v);
}

std::string ScalarField::elem_str(uint32_t x) const {
  auto c = coords(x);
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ":";
    s += std::to_string(c[i]);
  }
  return s;
}

bool ScalarField::in_subfield(uint32_t x, uint64_t Q) const {
  if (x == 0) return true;
  return elem_order(x) <= Q - 1 && (Q - 1) % elem_order(x) == 0;
}

std::vector<uint32_t> ScalarField::subfield_elems(uint64_t Q) const {
  if ((n - 1) % (Q - 1) != 0)
    fail(ErrKind::Shape, "no subfield of size " + std::to_string(Q));
  std::vector<uint32_t> out;
  for (uint64_t x = 0; x < n; ++x)
    if (in_subfield(uint32_t(x), Q)) out.push_back(uint32_t(x));
  return out;
}

uint32_t ScalarField::subfield_gen(uint64_t Q) const {
  if ((n - 1) % (Q - 1) != 0)
    fail(ErrKind::Shape, "no subfield of size " + std::to_string(Q));
  for (uint64_t x = 1; x < n; ++x)
    if (elem_order(uint32_t(x)) == Q - 1) return uint32_t(x);
  fail(ErrKind::Internal, "subfield generator not found");
}

uint32_t ScalarField::embed(const ScalarField& small, uint32_t x) const {
  if (small.p != p) fail(ErrKind::Shape, "incompatible characteristic");
  if (deg % small.deg != 0) fail(ErrKind::Shape, "no embedding: degree mismatch");
  if (x == 0) return 0;
  if (small.n == p) return x;  // prime subfield: indices agree
  // Minimal polynomial of small.gen over F_p, via its conjugate orbit.
  std::vector<uint32_t> orbit;
  uint32_t g = small.gen;
  uint32_t c = g;
  do {
    orbit.push_back(c);
    c = small.frob_p(c, 1);
  } while (c != g);
  // minpoly = prod (X - conj); coefficients land in F_p.
  std::vector<uint32_t> mp{1};
  for (uint32_t root : orbit) {
    std::vector<uint32_t> nxt(mp.size() + 1, 0);
    for (size_t i = 0; i < mp.size(); ++i) {
      nxt[i + 1] = small.add(nxt[i + 1], mp[i]);
      nxt[i] = small.add(nxt[i], small.mul(small.neg(root), mp[i]));
    }
    mp = nxt;
  }
  // Smallest root of minpoly here (all roots are conjugate; pick canonical).
  for (uint64_t y = 1; y < n; ++y) {
    uint32_t acc = 0, yp = 1;
    for (size_t i = 0; i < mp.size(); ++i) {
      // mp coefficients are prime-field: same index code here
      acc = add(acc, mul(mp[i], yp));
      yp = mul(yp, uint32_t(y));
    }
    if (acc == 0) {
      return pow(uint32_t(y), BigInt(small.dlog(x)));
    }
  }
  fail(ErrKind::Internal, "embedding root not found");
}

ScalarField field_build(uint32_t p, uint32_t a, uint32_t s, uint64_t enum_bound) {
  if (p < 2 || a < 1 || s < 1) fail(ErrKind::Shape, "field_build: bad parameters");
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrKind::Shape, "field_build: p not prime");
  uint32_t deg = a * s;
  uint64_t n = 1;
  for (uint32_t i = 0; i < deg; ++i) {
    n *= p;
    if (n > enum_bound)
      fail(ErrKind::Size, "field_build: p^(a*s) exceeds enumeration bound " +
                              std::to_string(enum_bound));
  }

  ScalarField F;
  F.p = p;
  F.a = a;
  F.s = s;
  F.deg = deg;
  F.n = n;
  F.q = 1;
  for (uint32_t i = 0; i < a; ++i) F.q *= p;

  // Lexicographically smallest irreducible monic modulus: candidates ordered
  // by the integer code of (c_0, ..., c_{deg-1}).
  PolyP mod;
  if (deg == 1) {
    mod = {0, 1};  // x itself; the field is F_p
  } else {
    uint64_t cap = 1;
    for (uint32_t i = 0; i < deg; ++i) cap *= p;
    for (uint64_t code = 0; code < cap; ++code) {
      PolyP f(deg + 1, 0);
      uint64_t c = code;
      for (uint32_t i = 0; i < deg; ++i) {
        f[i] = uint32_t(c % p);
        c /= p;
      }
      f[deg] = 1;
      if (irreducible(f, p)) {
        mod = f;
        break;
      }
    }
    if (mod.empty()) fail(ErrKind::Internal, "no irreducible modulus found");
  }
  F.modulus = mod;

  // Digit table.
  F.digits_.resize(size_t(n) * deg);
  for (uint64_t x = 0; x < n; ++x) {
    uint64_t c = x;
    for (uint32_t i = 0; i < deg; ++i) {
      F.digits_[size_t(x) * deg + i] = uint8_t(c % p);
      c /= p;
    }
  }
  F.neg_tab_.resize(n);
  for (uint64_t x = 0; x < n; ++x) {
    uint64_t r = 0, mult = 1;
    for (uint32_t i = 0; i < deg; ++i) {
      uint32_t d = F.digits_[size_t(x) * deg + i];
      r += (d ? p - d : 0) * mult;
      mult *= p;
    }
    F.neg_tab_[x] = uint32_t(r);
  }

  // Raw multiply via polynomial arithmetic (used to bootstrap the log tables).
  auto idx_to_poly = [&](uint64_t x) {
    PolyP f(deg, 0);
    for (uint32_t i = 0; i < deg; ++i) f[i] = F.digits_[size_t(x) * deg + i];
    trim(f);
    return f;
  };
  auto poly_to_idx = [&](const PolyP& f) {
    uint64_t v = 0, mult = 1;
    for (uint32_t i = 0; i < deg; ++i) {
      v += (i < f.size() ? f[i] : 0) * mult;
      mult *= p;
    }
    return uint32_t(v);
  };
  auto raw_mul = [&](uint32_t x, uint32_t y) {
    return poly_to_idx(poly_mulmod(idx_to_poly(x), idx_to_poly(y), mod, p));
  };
  auto raw_pow = [&](uint32_t x, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = raw_mul(r, x);
      x = raw_mul(x, x);
      e >>= 1;
    }
    return r;
  };

  // Smallest primitive element.
  auto factors = prime_factors(n - 1);
  uint32_t gen = 0;
  for (uint64_t x = 2; x < n; ++x) {
    bool prim = n == 2;
    if (n > 2) {
      prim = true;
      for (uint64_t l : factors)
        if (raw_pow(uint32_t(x), (n - 1) / l) == 1) {
          prim = false;
          break;
        }
    }
    if (prim) {
      gen = uint32_t(x);
      break;
    }
  }
  if (gen == 0 && n > 2) fail(ErrKind::Internal, "no primitive element");
  if (n == 2) gen = 1;
  F.gen = gen;

  F.alog_.resize(n - 1);
  F.dlog_.assign(n, UINT32_MAX);
  uint32_t cur = 1;
  for (uint64_t e = 0; e < n - 1; ++e) {
    F.alog_[e] = cur;
    F.dlog_[cur] = uint32_t(e);
    cur = raw_mul(cur, gen);
  }
  if (cur != 1) fail(ErrKind::Internal, "generator order mismatch");

  // Frobenius permutation tables for every p-power.
  F.frob_tab_.resize(size_t(deg) * n);
  for (uint64_t x = 0; x < n; ++x) F.frob_tab_[x] = uint32_t(x);  // j = 0
  if (deg > 1) {
    for (uint64_t x = 0; x < n; ++x)
      F.frob_tab_[n + x] = x == 0 ? 0 : F.alog_[(uint64_t(F.dlog_[x]) * p) % (n - 1)];
    for (uint32_t j = 2; j < deg; ++j)
      for (uint64_t x = 0; x < n; ++x)
        F.frob_tab_[size_t(j) * n + x] = F.frob_tab_[n + F.frob_tab_[size_t(j - 1) * n + x]];
  }

  if (n <= 1024) {
    F.add_tab_.resize(size_t(n) * n);
    F.small_add_ = false;  // fill using digit addition first
    for (uint64_t x = 0; x < n; ++x)
      for (uint64_t y = 0; y < n; ++y)
        F.add_tab_[size_t(x) * n + y] = F.add(uint32_t(x), uint32_t(y));
    F.small_add_ = true;
  }
  return F;
}

RootSearch scalar_root_search(const ScalarField& F, uint32_t a_idx, uint64_t nn,
                              int s_cap) {
  RootSearch out;
  if (a_idx == 0) fail(ErrKind::DivByZero, "scalar_root of zero");
  if (nn == 0) fail(ErrKind::Shape, "scalar_root: exponent must be positive");
  uint64_t ord = F.elem_order(a_idx);
  uint64_t g = std::gcd(nn, F.n - 1);
  if (F.dlog(a_idx) % g == 0) {
    // Solve nn*k = dlog(a) mod (n-1); canonical = smallest index among the g
    // solutions k0 + t*(n-1)/g.
    uint64_t m = (F.n - 1) / g;
    uint64_t nred = (nn / g) % m;
    uint64_t dred = (F.dlog(a_idx) / g) % m;
    // inverse of nred mod m
    auto egcd = [](auto self, long long x, long long y) -> std::pair<long long, long long> {
      if (!y) return {1, 0};
      auto [u, v] = self(self, y, x % y);
      return {v, u - (x / y) * v};
    };
    long long inv = egcd(egcd, (long long)nred, (long long)m).first;
    inv %= (long long)m;
    if (inv < 0) inv += m;
    uint64_t k0 = (unsigned long long)((__uint128_t(inv) * dred) % m);
    uint32_t best = UINT32_MAX;
    for (uint64_t t = 0; t < g; ++t) {
      uint32_t cand = F.alog(k0 + t * m);
      best = std::min(best, cand);
    }
    out.ok = true;
    out.root = best;
    return out;
  }
  // Minimal sufficient s': need ord | q^{s'}-1 (containment) and
  // ord | (q^{s'}-1)/gcd(nn, q^{s'}-1) (solvability).
  for (int sp = 1; sp <= s_cap; ++sp) {
    BigInt qs = 1;
    for (int i = 0; i < sp; ++i) qs *= F.q;
    BigInt u = qs - 1;
    if (u % ord != 0) continue;
    BigInt gg = gcd(u, BigInt(nn));
    if ((u / gg) % ord == 0) {
      out.min_s = sp;
      return out;
    }
  }
  out.min_s = 0;
  return out;
}

uint32_t scalar_root(const ScalarField& F, uint32_t a_idx, uint64_t nn) {
  RootSearch r = scalar_root_search(F, a_idx, nn);
  if (!r.ok) {
    Error e(ErrKind::Unsolvable,
            "no " + std::to_string(nn) + "-th root in F_{q^s}; minimal sufficient s = " +
                std::to_string(r.min_s));
    e.min_s = r.min_s;
    throw e;
  }
  return r.root;
}

uint32_t choose_s(uint32_t p, uint32_t a, uint32_t r, uint64_t ord_m1,
                  uint64_t ord_m1kr, uint32_t s_cap) {
  BigInt q = 1;
  for (uint32_t i = 0; i < a; ++i) q *= p;
  for (uint32_t s = r; s <= s_cap; s += r) {
    BigInt qs = 1;
    for (uint32_t i = 0; i < s; ++i) qs *= q;
    BigInt u = qs - 1;
    BigInt qm1 = q - 1;
    BigInt qr1 = 1;
    for (uint32_t i = 0; i < r; ++i) qr1 *= q;
    qr1 -= 1;
    if (u % ord_m1 != 0 || u % ord_m1kr != 0) continue;
    if ((u / gcd(u, qm1)) % ord_m1 != 0) continue;
    if ((u / gcd(u, qr1)) % ord_m1kr != 0) continue;
    return s;
  }
  fail(ErrKind::Unsolvable, "choose_s: no suitable s below cap");
}

}  // namespace dmlab
