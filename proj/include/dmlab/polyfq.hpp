#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dmlab/fq.hpp"
#include "dmlab/puiseux.hpp"

namespace dmlab {

// Dense univariate polynomial over a ScalarField, ascending coefficients,
// trailing zeros trimmed. The field is passed to every operation instead of
// being stored; the zero polynomial is the empty vector.
using PolyFq = std::vector<uint32_t>;

inline void pf_trim(PolyFq& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long long pf_deg(const PolyFq& f) { return (long long)f.size() - 1; }

inline PolyFq pf_x() { return {0, 1}; }

inline PolyFq pf_add(const ScalarField& F, const PolyFq& x, const PolyFq& y) {
  PolyFq r = x.size() >= y.size() ? x : y;
  const PolyFq& s = x.size() >= y.size() ? y : x;
  for (size_t i = 0; i < s.size(); ++i) r[i] = F.add(r[i], s[i]);
  pf_trim(r);
  return r;
}

inline PolyFq pf_neg(const ScalarField& F, const PolyFq& x) {
  PolyFq r = x;
  for (auto& v : r) v = F.neg(v);
  return r;
}

inline PolyFq pf_sub(const ScalarField& F, const PolyFq& x, const PolyFq& y) {
  return pf_add(F, x, pf_neg(F, y));
}

inline PolyFq pf_scale(const ScalarField& F, const PolyFq& x, uint32_t k) {
  if (k == 0) return {};
  PolyFq r = x;
  for (auto& v : r) v = F.mul(v, k);
  return r;
}

inline PolyFq pf_mul(const ScalarField& F, const PolyFq& x, const PolyFq& y) {
  if (x.empty() || y.empty()) return {};
  PolyFq r(x.size() + y.size() - 1, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < y.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
  }
  pf_trim(r);
  return r;
}

inline std::pair<PolyFq, PolyFq> pf_divmod(const ScalarField& F, PolyFq x,
                                           const PolyFq& y) {
  if (y.empty()) fail(ErrKind::DivByZero, "polynomial division by zero");
  uint32_t il = F.inv(y.back());
  PolyFq q;
  while (x.size() >= y.size()) {
    uint32_t c = F.mul(x.back(), il);
    size_t off = x.size() - y.size();
    if (q.size() < off + 1) q.resize(off + 1, 0);
    q[off] = c;
    for (size_t j = 0; j < y.size(); ++j)
      x[off + j] = F.sub(x[off + j], F.mul(c, y[j]));
    pf_trim(x);
    if (x.empty()) break;
  }
  pf_trim(q);
  return {q, x};
}

inline PolyFq pf_mod(const ScalarField& F, const PolyFq& x, const PolyFq& y) {
  return pf_divmod(F, x, y).second;
}

inline PolyFq pf_gcd(const ScalarField& F, PolyFq x, PolyFq y) {
  pf_trim(x);
  pf_trim(y);
  while (!y.empty()) {
    PolyFq r = pf_mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty() && x.back() != 1) x = pf_scale(F, x, F.inv(x.back()));
  return x;
}

inline PolyFq pf_powmod(const ScalarField& F, PolyFq base, BigInt e,
                        const PolyFq& mod) {
  PolyFq r{1};
  base = pf_mod(F, base, mod);
  while (e > 0) {
    if ((e & 1) != 0) r = pf_mod(F, pf_mul(F, r, base), mod);
    base = pf_mod(F, pf_mul(F, base, base), mod);
    e >>= 1;
  }
  return r;
}

inline uint32_t pf_eval(const ScalarField& F, const PolyFq& f, uint32_t x) {
  uint32_t r = 0;
  for (size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

// Evaluation with the variable sent to a series (e.g. t -> theta).
inline Puiseux pf_eval_pz(const ScalarField& F, const PolyFq& f,
                          const Puiseux& x) {
  Puiseux r = pz_zero();
  for (size_t i = f.size(); i-- > 0;)
    r = pz_add(pz_mul(r, x), pz_from_field(F, f[i]));
  return r;
}

// Rabin test over F_q: f irreducible iff x^(q^m) = x mod f and
// gcd(x^(q^(m/l)) - x, f) = 1 for every prime l | m.
inline bool pf_irreducible(const ScalarField& F, const PolyFq& f) {
  long long m = pf_deg(f);
  if (m <= 0) return false;
  if (m == 1) return true;
  auto qpow = [&](long long e) {
    BigInt r = 1;
    for (long long i = 0; i < e; ++i) r *= F.q;
    return r;
  };
  PolyFq x = pf_x();
  if (pf_powmod(F, x, qpow(m), f) != pf_mod(F, x, f)) return false;
  for (long long l = 2; l <= m; ++l) {
    if (m % l != 0) continue;
    bool prime = true;
    for (long long d = 2; d * d <= l; ++d)
      if (l % d == 0) { prime = false; break; }
    if (!prime) continue;
    PolyFq u = pf_sub(F, pf_powmod(F, x, qpow(m / l), f), x);
    if (pf_deg(pf_gcd(F, u, f)) != 0) return false;
  }
  return true;
}

inline std::string pf_str(const ScalarField& F, const PolyFq& f,
                          const std::string& var = "t") {
  if (f.empty()) return "0";
  std::string s;
  for (size_t i = f.size(); i-- > 0;) {
    if (!f[i]) continue;
    if (!s.empty()) s += " + ";
    s += "(" + F.elem_str(f[i]) + ")";
    if (i == 1) s += "*" + var;
    if (i > 1) s += "*" + var + "^" + std::to_string(i);
  }
  return s;
}

// Ring adapters for the division-free characteristic polynomial.
struct FqRing {
  const ScalarField* F;
  using Elem = uint32_t;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem x, Elem y) const { return F->add(x, y); }
  Elem mul(Elem x, Elem y) const { return F->mul(x, y); }
  Elem neg(Elem x) const { return F->neg(x); }
};

struct PolyFqRing {
  const ScalarField* F;
  using Elem = PolyFq;
  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem add(const Elem& x, const Elem& y) const { return pf_add(*F, x, y); }
  Elem mul(const Elem& x, const Elem& y) const { return pf_mul(*F, x, y); }
  Elem neg(const Elem& x) const { return pf_neg(*F, x); }
};

struct PzRing {
  const ScalarField* F;
  using Elem = Puiseux;
  Elem zero() const { return pz_zero(); }
  Elem one() const { return pz_one(*F); }
  Elem add(const Elem& x, const Elem& y) const { return pz_add(x, y); }
  Elem mul(const Elem& x, const Elem& y) const { return pz_mul(x, y); }
  Elem neg(const Elem& x) const { return pz_neg(x); }
};

// Berkowitz: characteristic polynomial det(X*I - A) over any commutative
// ring, no divisions. A is row-major n x n; returns the n+1 coefficients in
// descending degree (leading 1 first).
template <typename Ring>
std::vector<typename Ring::Elem> charpoly(const Ring& R,
                                          const std::vector<typename Ring::Elem>& A,
                                          size_t n) {
  using E = typename Ring::Elem;
  if (A.size() != n * n) fail(ErrKind::Shape, "charpoly: not n*n entries");
  std::vector<E> vec{R.one()};
  for (size_t i = 1; i <= n; ++i) {
    // Toeplitz column t_0..t_i for the i-th principal submatrix
    std::vector<E> t(i + 1, R.zero());
    t[0] = R.one();
    t[1] = R.neg(A[(i - 1) * n + (i - 1)]);
    if (i >= 2) {
      std::vector<E> w(i - 1);
      for (size_t k = 0; k < i - 1; ++k) w[k] = A[k * n + (i - 1)];
      for (size_t kk = 2; kk <= i; ++kk) {
        E dot = R.zero();
        for (size_t k = 0; k < i - 1; ++k)
          dot = R.add(dot, R.mul(A[(i - 1) * n + k], w[k]));
        t[kk] = R.neg(dot);
        if (kk < i) {
          std::vector<E> nw(i - 1, R.zero());
          for (size_t r = 0; r < i - 1; ++r)
            for (size_t k = 0; k < i - 1; ++k)
              nw[r] = R.add(nw[r], R.mul(A[r * n + k], w[k]));
          w = std::move(nw);
        }
      }
    }
    // vec <- T * vec with T the lower-triangular Toeplitz column t
    std::vector<E> nv(i + 1, R.zero());
    for (size_t j = 0; j <= i; ++j) {
      E acc = R.zero();
      for (size_t k = 0; k < vec.size(); ++k)
        if (j >= k && j - k <= i) acc = R.add(acc, R.mul(t[j - k], vec[k]));
      nv[j] = acc;
    }
    vec = std::move(nv);
  }
  return vec;
}

}  // namespace dmlab
