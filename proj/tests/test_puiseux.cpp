#include <random>

#include "doctest.h"
#include "dmlab/puiseux.hpp"

using namespace dmlab;

namespace {

// Random series on a 1/den lattice with exponents in [-12, 6], for property
// tests. Fixed-seed generator passed in by the caller.
Puiseux random_pz(const ScalarField& F, std::mt19937& rng, long long den) {
  std::uniform_int_distribution<int> nt(0, 6), ex(-12 * int(den), 6 * int(den));
  std::uniform_int_distribution<uint32_t> cf(1, uint32_t(F.n - 1));
  Puiseux r = pz_zero();
  int k = nt(rng);
  for (int i = 0; i < k; ++i)
    r = pz_add(r, pz_term(F, cf(rng), Rat(ex(rng), den)));
  return r;
}

}  // namespace

TEST_CASE("term construction and canonical lattice") {
  ScalarField F = field_build(3, 1, 2);
  Puiseux t = pz_theta(F);
  CHECK(t.lo == 1);
  CHECK(t.den == 1);
  CHECK(t.nterms() == 1);
  Puiseux x = pz_add(pz_term(F, 1, Rat(2, 4)), pz_term(F, 2, Rat(3, 2)));
  CHECK(x.den == 2);
  CHECK(x.lo == 1);
  CHECK(x.st == 2);  // support {1/2, 3/2}: stride 1 on the half-lattice
  CHECK(x.nterms() == 2);
  // adding the negation cancels exactly
  CHECK(pz_sub(x, x).is_exact_zero());
  // single-term canonical form reduces the exponent
  Puiseux y = pz_term(F, 1, Rat(6, 4));
  CHECK(y.den == 2);
  CHECK(y.lo == 3);
  CHECK(y.st == 1);
}

TEST_CASE("absorbing zero works as a generic additive identity") {
  ScalarField F = field_build(3, 1, 1);
  Puiseux z = pz_zero();
  Puiseux x = pz_add(pz_theta(F), pz_one(F));
  CHECK(pz_eq(pz_add(z, x), x));
  CHECK(pz_eq(pz_add(x, z), x));
  CHECK(pz_mul(z, x).is_exact_zero());
  CHECK(pz_mul(x, z).is_exact_zero());
  CHECK_THROWS_AS(pz_inv(z), Error);
}

TEST_CASE("floor propagation") {
  ScalarField F = field_build(3, 1, 1);
  Puiseux x = pz_term(F, 1, Rat(2), Rat(-5));   // theta^2 + O(theta^-5)
  Puiseux y = pz_term(F, 2, Rat(-1), Rat(-8));  // 2theta^-1 + O(theta^-8)
  SUBCASE("add keeps the weaker floor") {
    Puiseux s = pz_add(x, y);
    REQUIRE(s.floor_.has_value());
    CHECK(*s.floor_ == Rat(-5));
    CHECK(s.nterms() == 2);
  }
  SUBCASE("mul shifts floors by the partner's lead") {
    Puiseux m = pz_mul(x, y);
    REQUIRE(m.floor_.has_value());
    // max(-5 + (-1), -8 + 2) = -6
    CHECK(*m.floor_ == Rat(-6));
    CHECK(m.norm_logq() == LogQ(Rat(1)));
  }
  SUBCASE("terms at or below the floor are dropped") {
    Puiseux t = pz_truncate(pz_add(x, y), Rat(-1));
    CHECK(t.nterms() == 1);
    CHECK(*t.floor_ == Rat(-1));
    Puiseux all = pz_truncate(x, Rat(2));
    CHECK(all.is_zero());
    CHECK(!all.is_exact_zero());
  }
  SUBCASE("inverting zero-to-precision is a Precision error, not DivByZero") {
    Puiseux zp = pz_zero_prec(&F, Rat(-5));
    try {
      pz_inv(zp);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrKind::Precision);
    }
  }
}

TEST_CASE("inverse against the geometric series oracle") {
  ScalarField F = field_build(3, 1, 1);
  // 1/(theta - theta^3) = -theta^-3 * 1/(1 - theta^-2)
  //                     = -(theta^-3 + theta^-5 + theta^-7 + ...)
  Puiseux x = pz_sub(pz_theta(F), pz_term(F, 1, Rat(3)));
  Puiseux inv = pz_inv(x, Rat(-20));
  Puiseux oracle = pz_zero();
  for (long long k = 3; k <= 19; k += 2)
    oracle = pz_add(oracle, pz_term(F, 2, Rat(-k)));
  CHECK(pz_sub(inv, oracle).is_zero());
  CHECK(*inv.floor_ == Rat(-20));
  // residual of x * x^-1 - 1 sits below the working floor
  Puiseux resid = pz_sub(pz_mul(x, inv), pz_one(F));
  CHECK(resid.is_zero());
  // exact single-term inverse stays exact
  Puiseux m = pz_inv(pz_term(F, 2, Rat(5)));
  CHECK(m.is_exact());
  CHECK(pz_eq(m, pz_term(F, 2, Rat(-5))));
}

TEST_CASE("field and twist properties on random series") {
  ScalarField F = field_build(3, 1, 2);
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    Puiseux x = random_pz(F, rng, 2);
    Puiseux y = random_pz(F, rng, 2);
    Puiseux z = random_pz(F, rng, 2);
    CHECK(pz_eq(pz_add(x, y), pz_add(y, x)));
    CHECK(pz_eq(pz_mul(x, y), pz_mul(y, x)));
    CHECK(pz_eq(pz_mul(pz_add(x, y), z), pz_add(pz_mul(x, z), pz_mul(y, z))));
    CHECK(pz_eq(pz_mul(pz_mul(x, y), z), pz_mul(x, pz_mul(y, z))));
    // twist is a ring endomorphism and q-power map
    for (long long j : {1LL, 2LL, -1LL}) {
      CHECK(pz_eq(pz_twist(pz_add(x, y), j), pz_add(pz_twist(x, j), pz_twist(y, j))));
      CHECK(pz_eq(pz_twist(pz_mul(x, y), j), pz_mul(pz_twist(x, j), pz_twist(y, j))));
    }
    CHECK(pz_eq(pz_twist(pz_twist(x, 1), -1), x));
    if (!x.is_zero()) CHECK(pz_eq(pz_twist(x, 1), pz_pow(x, (long long)F.q)));
    // norm multiplicativity
    if (!x.is_zero() && !y.is_zero()) {
      REQUIRE(pz_mul(x, y).norm_logq().has_value());
      CHECK(*pz_mul(x, y).norm_logq() == *x.norm_logq() + *y.norm_logq());
    }
  }
}

TEST_CASE("twist scales floors and exponents by q^j") {
  ScalarField F = field_build(3, 1, 2);
  Puiseux x = pz_term(F, 4, Rat(1, 2), Rat(-10));
  Puiseux t1 = pz_twist(x, 1);
  CHECK(t1.lead_exp() == Rat(3, 2));
  CHECK(*t1.floor_ == Rat(-30));
  CHECK(t1.c[0] == F.frob_q(4, 1));
  Puiseux tm = pz_twist(x, -1);
  CHECK(tm.lead_exp() == Rat(1, 6));
  CHECK(*tm.floor_ == Rat(-10, 3));
}

TEST_CASE("coefficient lookup and display") {
  ScalarField F = field_build(3, 1, 1);
  Puiseux x = pz_add(pz_term(F, 2, Rat(3)), pz_term(F, 1, Rat(-1, 2)));
  CHECK(pz_coeff(x, Rat(3)) == 2);
  CHECK(pz_coeff(x, Rat(-1, 2)) == 1);
  CHECK(pz_coeff(x, Rat(0)) == 0);
  CHECK(pz_coeff(x, Rat(1, 3)) == 0);
  auto td = pz_terms_desc(x);
  REQUIRE(td.size() == 2);
  CHECK(td[0].first == Rat(3));
  CHECK(td[1].first == Rat(-1, 2));
  CHECK(pz_str(pz_zero()) == "0");
}

TEST_CASE("mixed-lattice arithmetic keeps exponents exact") {
  ScalarField F = field_build(3, 1, 4);
  // torsion-flavoured element theta^(1/8) plus an integer-lattice tail
  Puiseux xi = pz_term(F, 1, Rat(1, 8));
  Puiseux s = pz_add(xi, pz_term(F, 2, Rat(-3)));
  CHECK(s.den == 8);
  Puiseux p8 = pz_pow(xi, 8);
  CHECK(pz_eq(p8, pz_theta(F)));
  // eighth power of the sum has lead theta exactly
  Puiseux s8 = pz_pow(s, 8);
  CHECK(s8.norm_logq() == LogQ(Rat(1)));
  CHECK(pz_coeff(s8, Rat(1)) == 1);
}
