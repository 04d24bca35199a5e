#include <random>

#include "doctest.h"
#include "dmlab/skew.hpp"

using namespace dmlab;

namespace {

SkewPoly<Puiseux> random_sk(const ScalarField& F, std::mt19937& rng, SkewVar var) {
  std::uniform_int_distribution<int> nd(0, 3), ex(-4, 3);
  std::uniform_int_distribution<uint32_t> cf(0, uint32_t(F.n - 1));
  std::vector<Puiseux> c(size_t(nd(rng)) + 1);
  for (auto& v : c) {
    uint32_t k = cf(rng);
    if (k) v = pz_term(F, k, Rat(ex(rng)));
  }
  return sk_make(var, std::move(c));
}

}  // namespace

TEST_CASE("composition property of twisted evaluation") {
  ScalarField F = field_build(3, 1, 2);
  std::mt19937 rng(1001);
  Puiseux z = pz_add(pz_term(F, 3, Rat(-1)), pz_term(F, 1, Rat(-2)));
  for (int trial = 0; trial < 30; ++trial) {
    SkewPoly<Puiseux> x = random_sk(F, rng, SkewVar::Tau);
    SkewPoly<Puiseux> y = random_sk(F, rng, SkewVar::Tau);
    // (x*y)(z) = x(y(z)): the product is composition of additive maps
    Puiseux lhs = sk_eval(sk_mul(x, y), z, false);
    Puiseux rhs = sk_eval(x, sk_eval(y, z, false), false);
    CHECK(pz_sub(lhs, rhs).is_exact_zero());
    // additivity in z
    Puiseux w = pz_term(F, 5, Rat(-1));
    CHECK(pz_sub(sk_eval(x, pz_add(z, w), false),
                 pz_add(sk_eval(x, z, false), sk_eval(x, w, false)))
              .is_exact_zero());
  }
}

TEST_CASE("star is an anti-involution") {
  ScalarField F = field_build(3, 1, 2);
  std::mt19937 rng(1002);
  for (int trial = 0; trial < 30; ++trial) {
    SkewPoly<Puiseux> x = random_sk(F, rng, SkewVar::Tau);
    SkewPoly<Puiseux> y = random_sk(F, rng, SkewVar::Tau);
    SkewPoly<Puiseux> lhs = sk_star(sk_mul(x, y));
    SkewPoly<Puiseux> rhs = sk_mul(sk_star(y), sk_star(x));
    CHECK(lhs.c.size() == rhs.c.size());
    for (size_t i = 0; i < lhs.c.size(); ++i)
      CHECK(pz_sub(lhs.c[i], rhs.c[i]).is_exact_zero());
    SkewPoly<Puiseux> twice = sk_star(sk_star(x));
    CHECK(twice.var == x.var);
    REQUIRE(twice.c.size() == x.c.size());
    for (size_t i = 0; i < x.c.size(); ++i) CHECK(pz_eq(twice.c[i], x.c[i]));
  }
}

TEST_CASE("star transposes matrix coefficients") {
  ScalarField F = field_build(3, 1, 1);
  Mat<Puiseux> A(2, 2), B(2, 2);
  A(0, 1) = pz_theta(F);
  A(1, 0) = pz_one(F);
  B(0, 0) = pz_term(F, 2, Rat(2));
  B(1, 1) = pz_one(F);
  SkewPoly<Mat<Puiseux>> x = sk_make(SkewVar::Tau, std::vector<Mat<Puiseux>>{A, B});
  SkewPoly<Mat<Puiseux>> xs = sk_star(x);
  CHECK(xs.var == SkewVar::Sigma);
  CHECK(pz_eq(xs.c[0](1, 0), A(0, 1)));
  // degree-1 coefficient picks up a twist by -1
  CHECK(pz_eq(xs.c[1](0, 0), pz_twist(B(0, 0), -1)));
  SkewPoly<Mat<Puiseux>> back = sk_star(xs);
  for (size_t i = 0; i < 2; ++i)
    for (size_t k = 0; k < 4; ++k) CHECK(pz_eq(back.c[i].a[k], x.c[i].a[k]));
}

TEST_CASE("tau-part blocks for a rank-2 operator") {
  ScalarField F = field_build(3, 1, 4);
  Puiseux k1 = pz_one(F), k2 = pz_from_field(F, 2);
  std::vector<Puiseux> A{k1, k2};
  SkewPoly<Puiseux> b0 = theta_block_twisted(A, 0);
  REQUIRE(b0.deg() == 2);
  CHECK(pz_eq(b0.c[1], k1));
  CHECK(pz_eq(b0.c[2], k2));
  CHECK(b0.c[0].is_exact_zero());
  SkewPoly<Puiseux> b1 = theta_block_twisted(A, 1);
  REQUIRE(b1.deg() == 1);
  CHECK(pz_eq(b1.c[1], pz_twist(k2, -1)));
  SkewPoly<Puiseux> p1 = theta_block_plain(A, 1);
  REQUIRE(p1.deg() == 1);
  CHECK(pz_eq(p1.c[1], k2));
}

TEST_CASE("series-tail certification in twisted evaluation") {
  ScalarField F = field_build(3, 1, 1);
  // m = sum theta^(-(3^i)) tau^i, z = 1: terms theta^(-3^i) decay
  std::vector<Puiseux> c;
  for (long long i = 0; i <= 4; ++i) {
    long long e = 1;
    for (long long k = 0; k < i; ++k) e *= 3;
    c.push_back(pz_term(F, 1, Rat(-e)));
  }
  SkewPoly<Puiseux> m = sk_make(SkewVar::Tau, std::move(c));
  Puiseux val = sk_eval(m, pz_one(F));
  REQUIRE(val.floor_.has_value());
  CHECK(*val.floor_ == Rat(-81));
  CHECK(pz_coeff(val, Rat(-1)) == 1);
  CHECK(pz_coeff(val, Rat(-3)) == 1);

  // growing terms: z = theta^2 makes the term norms climb as q^(3^i)
  try {
    sk_eval(m, pz_term(F, 1, Rat(2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Divergence);
  }
  // z = theta sits on the convergence boundary: a flat norm plateau, so the
  // certified tail bound swallows the whole value (zero to precision 0)
  Puiseux edge = sk_eval(m, pz_theta(F));
  CHECK(edge.is_zero());
  CHECK(edge.floor_ == std::optional<Rat>(Rat(0)));
  // zero point short-circuits
  CHECK(sk_eval(m, pz_zero()).is_exact_zero());
}

TEST_CASE("delta1 pairs rows with points") {
  ScalarField F = field_build(3, 1, 1);
  SkewPoly<Puiseux> id = sk_make(SkewVar::Tau, std::vector<Puiseux>{pz_one(F)});
  SkewPoly<Puiseux> tau = sk_make(SkewVar::Tau, std::vector<Puiseux>{pz_zero(), pz_one(F)});
  Puiseux z1 = pz_term(F, 2, Rat(-1));
  Puiseux z2 = pz_term(F, 1, Rat(-2));
  // delta1([1, tau], [z1, z2]) = z1 + z2^q
  Puiseux got = delta1({id, tau}, {z1, z2}, false);
  Puiseux want = pz_add(z1, pz_twist(z2, 1));
  CHECK(pz_sub(got, want).is_exact_zero());
  CHECK_THROWS_AS(delta1({id}, {z1, z2}, false), Error);
}
