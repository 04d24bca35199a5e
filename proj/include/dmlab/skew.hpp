#pragma once

#include <vector>

#include "dmlab/matrix.hpp"
#include "dmlab/puiseux.hpp"

namespace dmlab {

// Twisted polynomials sum c_i X^i where X is the q-Frobenius (Tau) or its
// inverse (Sigma): X*c = twist(c, +-1)*X. Coefficients are scalars or
// matrices; multiplication keeps the left-to-right order so the matrix case
// stays correct.
enum class SkewVar { Tau, Sigma };

namespace detail {
inline Puiseux twist_any(const Puiseux& x, long long j) { return pz_twist(x, j); }
inline Mat<Puiseux> twist_any(const Mat<Puiseux>& x, long long j) {
  return mat_twist(x, j);
}
inline Puiseux add_any(const Puiseux& x, const Puiseux& y) { return pz_add(x, y); }
inline Mat<Puiseux> add_any(const Mat<Puiseux>& x, const Mat<Puiseux>& y) {
  if (x.a.empty()) return y;
  if (y.a.empty()) return x;
  return mat_add(x, y);
}
inline Puiseux mul_any(const Puiseux& x, const Puiseux& y) { return pz_mul(x, y); }
inline Mat<Puiseux> mul_any(const Mat<Puiseux>& x, const Mat<Puiseux>& y) {
  return mat_mul(x, y);
}
inline Puiseux transpose_any(const Puiseux& x) { return x; }
inline Mat<Puiseux> transpose_any(const Mat<Puiseux>& x) { return mat_transpose(x); }
inline bool exact_zero_any(const Puiseux& x) { return x.is_exact_zero(); }
inline bool exact_zero_any(const Mat<Puiseux>& x) {
  for (const auto& v : x.a)
    if (!v.is_exact_zero()) return false;
  return true;
}
}  // namespace detail

template <typename T>
struct SkewPoly {
  SkewVar var = SkewVar::Tau;
  std::vector<T> c;  // ascending powers of the twisting variable

  long long deg() const { return (long long)c.size() - 1; }
};

template <typename T>
void sk_trim(SkewPoly<T>& x) {
  while (!x.c.empty() && detail::exact_zero_any(x.c.back())) x.c.pop_back();
}

template <typename T>
SkewPoly<T> sk_make(SkewVar var, std::vector<T> c) {
  SkewPoly<T> r{var, std::move(c)};
  sk_trim(r);
  return r;
}

template <typename T>
T sk_coeff(const SkewPoly<T>& x, size_t i) {
  return i < x.c.size() ? x.c[i] : T{};
}

template <typename T>
SkewPoly<T> sk_add(const SkewPoly<T>& x, const SkewPoly<T>& y) {
  if (!x.c.empty() && !y.c.empty() && x.var != y.var)
    fail(ErrKind::Shape, "skew add: mixed twisting variables");
  SkewPoly<T> r;
  r.var = x.c.empty() ? y.var : x.var;
  r.c.resize(std::max(x.c.size(), y.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = detail::add_any(sk_coeff(x, i), sk_coeff(y, i));
  sk_trim(r);
  return r;
}

template <typename T>
SkewPoly<T> sk_mul(const SkewPoly<T>& x, const SkewPoly<T>& y) {
  if (!x.c.empty() && !y.c.empty() && x.var != y.var)
    fail(ErrKind::Shape, "skew mul: mixed twisting variables");
  SkewPoly<T> r;
  r.var = x.c.empty() ? y.var : x.var;
  if (x.c.empty() || y.c.empty()) return r;
  long long sgn = r.var == SkewVar::Tau ? 1 : -1;
  r.c.resize(x.c.size() + y.c.size() - 1);
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (detail::exact_zero_any(x.c[i])) continue;
    for (size_t j = 0; j < y.c.size(); ++j) {
      if (detail::exact_zero_any(y.c[j])) continue;
      r.c[i + j] = detail::add_any(
          r.c[i + j],
          detail::mul_any(x.c[i], detail::twist_any(y.c[j], sgn * (long long)i)));
    }
  }
  sk_trim(r);
  return r;
}

// Star anti-involution: swaps Tau and Sigma, conjugates coefficients by the
// accumulated twist, transposes matrix coefficients. (xy)^* = y^* x^*.
template <typename T>
SkewPoly<T> sk_star(const SkewPoly<T>& x) {
  SkewPoly<T> r;
  r.var = x.var == SkewVar::Tau ? SkewVar::Sigma : SkewVar::Tau;
  long long sgn = x.var == SkewVar::Tau ? -1 : 1;
  r.c.resize(x.c.size());
  for (size_t i = 0; i < x.c.size(); ++i)
    r.c[i] = detail::twist_any(detail::transpose_any(x.c[i]), sgn * (long long)i);
  sk_trim(r);
  return r;
}

// Tau-part blocks of an operator with coefficients A_1..A_l. For cut index j
// (0 <= j < l) the conjugated block carries coefficients twisted by -j; the
// plain block keeps them as they are. Both are polynomials in the same
// variable as the input convention (Tau).
template <typename T>
SkewPoly<T> theta_block_twisted(const std::vector<T>& A, size_t j) {
  size_t l = A.size();
  if (j >= l) fail(ErrKind::Shape, "theta block: cut index out of range");
  SkewPoly<T> r;
  r.var = SkewVar::Tau;
  r.c.resize(l - j + 1);
  for (size_t i = j + 1; i <= l; ++i)
    r.c[i - j] = detail::twist_any(A[i - 1], -(long long)j);
  sk_trim(r);
  return r;
}

template <typename T>
SkewPoly<T> theta_block_plain(const std::vector<T>& A, size_t j) {
  size_t l = A.size();
  if (j >= l) fail(ErrKind::Shape, "theta block: cut index out of range");
  SkewPoly<T> r;
  r.var = SkewVar::Tau;
  r.c.resize(l - j + 1);
  for (size_t i = j + 1; i <= l; ++i) r.c[i - j] = A[i - 1];
  sk_trim(r);
  return r;
}

// Twisted evaluation sum c_i z^(q^(+-i)). With series_tail the term norms
// must decay past their peak and the last retained term is stamped as the
// tail bound; use series_tail = false for genuinely finite operators.
Puiseux sk_eval(const SkewPoly<Puiseux>& m, const Puiseux& z,
                bool series_tail = true);

// Evaluation pairing of a width-d row of twisted polynomials against a
// d-point: sum_j m_j(z_j).
Puiseux delta1(const std::vector<SkewPoly<Puiseux>>& m,
               const std::vector<Puiseux>& z, bool series_tail = true);

}  // namespace dmlab
