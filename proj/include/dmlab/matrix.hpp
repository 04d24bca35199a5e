#pragma once

#include <cstddef>
#include <vector>

#include "dmlab/puiseux.hpp"

namespace dmlab {

// Dense row-major matrix over any additive/multiplicative type whose
// default-constructed value is an absorbing zero and which provides
// +, -, * operators (Puiseux, Tate series).
template <typename T>
struct Mat {
  size_t rows = 0, cols = 0;
  std::vector<T> a;
  Mat() = default;
  Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
};

template <typename T>
Mat<T> mat_add(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    fail(ErrKind::Shape, "matrix add: dimension mismatch");
  Mat<T> r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

template <typename T>
Mat<T> mat_sub(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    fail(ErrKind::Shape, "matrix sub: dimension mismatch");
  Mat<T> r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

template <typename T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) fail(ErrKind::Shape, "matrix mul: dimension mismatch");
  Mat<T> r(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k)
      for (size_t j = 0; j < y.cols; ++j)
        r(i, j) = r(i, j) + x(i, k) * y(k, j);
  return r;
}

template <typename T>
Mat<T> mat_identity(size_t n, const T& one) {
  Mat<T> r(n, n);
  for (size_t i = 0; i < n; ++i) r(i, i) = one;
  return r;
}

template <typename T>
Mat<T> mat_transpose(const Mat<T>& x) {
  Mat<T> r(x.cols, x.rows);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <typename T>
Mat<T> mat_scale(const Mat<T>& x, const T& s) {
  Mat<T> r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * s;
  return r;
}

inline Mat<Puiseux> mat_twist(const Mat<Puiseux>& x, long long j) {
  Mat<Puiseux> r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = pz_twist(x.a[i], j);
  return r;
}

// Sup of entry norms; none when every entry is zero to precision.
inline LogQ mat_norm_logq(const Mat<Puiseux>& x) {
  LogQ m;
  for (const auto& v : x.a) m = logq_max(m, v.norm_logq());
  return m;
}

inline bool mat_is_zero(const Mat<Puiseux>& x) {
  for (const auto& v : x.a) if (!v.is_zero()) return false;
  return true;
}

inline Mat<Puiseux> mat_truncate(const Mat<Puiseux>& x, const Rat& floor) {
  Mat<Puiseux> r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = pz_truncate(x.a[i], floor);
  return r;
}

// Gauss-Jordan inverse with norm pivoting. work_floor is handed to the
// series inversions of the pivots; a column whose candidates are all zero to
// precision is Singular.
// Inverse with per-row conditioning: each row is scaled to unit norm by an
// exact monomial before elimination, so entries of widely different sizes
// keep `rel_depth` significant digits instead of sharing one absolute floor.
Mat<Puiseux> mat_inv_scaled(const Mat<Puiseux>& x, const Rat& rel_depth);

Mat<Puiseux> mat_inv(const Mat<Puiseux>& x,
                     std::optional<Rat> work_floor = std::nullopt);

}  // namespace dmlab
