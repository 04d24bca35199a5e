#include "dmlab/skew.hpp"

namespace dmlab {

Puiseux sk_eval(const SkewPoly<Puiseux>& m, const Puiseux& z, bool series_tail) {
  if (m.c.empty() || z.is_exact_zero()) return pz_zero();
  long long sgn = m.var == SkewVar::Tau ? 1 : -1;
  if (!series_tail || z.is_zero()) {
    Puiseux r = pz_zero();
    for (size_t i = 0; i < m.c.size(); ++i)
      r = pz_add(r, pz_mul(m.c[i], pz_twist(z, sgn * (long long)i)));
    return r;
  }
  const ScalarField& F = *z.F;
  Rat lz = z.lead_exp();
  std::vector<LogQ> v(m.c.size());
  for (size_t i = 0; i < m.c.size(); ++i) {
    LogQ b = m.c[i].norm_logq();
    if (!b && m.c[i].floor_) b = m.c[i].floor_;
    if (b) v[i] = *b + lz * q_pow((long long)F.q, sgn * (long long)i);
  }
  size_t peak = 0;
  bool any = false;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] && (!any || *v[i] > *v[peak])) {
      peak = i;
      any = true;
    }
  if (any) {
    if (peak + 1 >= v.size())
      fail(ErrKind::Divergence,
           "twisted evaluation: no decay past the last retained term");
    // exactly-zero terms contribute nothing; compare set entries only
    std::optional<Rat> prev = v[peak];
    for (size_t i = peak + 1; i < v.size(); ++i) {
      if (!v[i]) continue;
      if (!(*v[i] <= *prev))
        fail(ErrKind::Divergence, "twisted evaluation: term norms grow past the peak");
      prev = v[i];
    }
  }
  Puiseux r = pz_zero();
  for (size_t i = 0; i < m.c.size(); ++i)
    r = pz_add(r, pz_mul(m.c[i], pz_twist(z, sgn * (long long)i)));
  if (!v.empty() && v.back()) r = pz_truncate(r, *v.back());
  return r;
}

Puiseux delta1(const std::vector<SkewPoly<Puiseux>>& m,
               const std::vector<Puiseux>& z, bool series_tail) {
  if (m.size() != z.size())
    fail(ErrKind::Shape, "delta1: row width does not match the point");
  Puiseux r = pz_zero();
  for (size_t j = 0; j < m.size(); ++j)
    r = pz_add(r, sk_eval(m[j], z[j], series_tail));
  return r;
}

}  // namespace dmlab
