#include "dmlab/matrix.hpp"

namespace dmlab {

Mat<Puiseux> mat_inv(const Mat<Puiseux>& x, std::optional<Rat> work_floor) {
  if (x.rows != x.cols) fail(ErrKind::Shape, "matrix inverse: not square");
  size_t n = x.rows;
  const ScalarField* F = nullptr;
  for (const auto& v : x.a)
    if (v.F) { F = v.F; break; }
  if (!F) fail(ErrKind::Singular, "matrix inverse: zero matrix");
  Mat<Puiseux> A = x;
  Mat<Puiseux> I = mat_identity(n, pz_one(*F));
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    LogQ best;
    for (size_t i = col; i < n; ++i) {
      LogQ nm = A(i, col).norm_logq();
      if (nm && (!best || *nm > *best)) {
        best = nm;
        piv = i;
      }
    }
    if (!best)
      fail(ErrKind::Singular, "matrix singular to working precision at column " +
                                  std::to_string(col));
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) {
        std::swap(A(piv, j), A(col, j));
        std::swap(I(piv, j), I(col, j));
      }
    }
    Puiseux inv_p = pz_inv(A(col, col), work_floor);
    for (size_t j = 0; j < n; ++j) {
      A(col, j) = pz_mul(A(col, j), inv_p);
      I(col, j) = pz_mul(I(col, j), inv_p);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || A(i, col).is_zero()) continue;
      Puiseux f = A(i, col);
      for (size_t j = 0; j < n; ++j) {
        A(i, j) = pz_sub(A(i, j), pz_mul(f, A(col, j)));
        I(i, j) = pz_sub(I(i, j), pz_mul(f, I(col, j)));
      }
    }
  }
  return I;
}

Mat<Puiseux> mat_inv_scaled(const Mat<Puiseux>& x, const Rat& rel_depth) {
  if (x.rows != x.cols) fail(ErrKind::Shape, "matrix inverse: not square");
  size_t n = x.rows;
  const ScalarField* F = nullptr;
  for (const auto& v : x.a)
    if (v.F) { F = v.F; break; }
  if (!F) fail(ErrKind::Singular, "matrix inverse: zero matrix");

  std::vector<Rat> s(n);
  Mat<Puiseux> scaled(n, n);
  for (size_t i = 0; i < n; ++i) {
    LogQ m;
    for (size_t j = 0; j < n; ++j) m = logq_max(m, x(i, j).norm_logq());
    if (!m)
      fail(ErrKind::Singular,
           "matrix singular to working precision at row " + std::to_string(i));
    s[i] = *m;
    Puiseux unscale = pz_term(*F, 1, -s[i]);
    for (size_t j = 0; j < n; ++j) scaled(i, j) = pz_mul(x(i, j), unscale);
  }

  Mat<Puiseux> inv = mat_inv(scaled, -rel_depth);
  for (size_t u = 0; u < n; ++u)
    for (size_t v = 0; v < n; ++v) {
      Puiseux e = pz_mul(inv(u, v), pz_term(*F, 1, -s[v]));
      // keep rel_depth digits below each entry's own lead so later products
      // against large-norm factors stay windowed
      LogQ lead = e.norm_logq();
      inv(u, v) = lead ? pz_truncate(e, *lead - rel_depth) : e;
    }
  return inv;
}

}  // namespace dmlab
