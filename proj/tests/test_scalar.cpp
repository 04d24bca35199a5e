#include "doctest.h"
#include "dmlab/fq.hpp"

using namespace dmlab;

TEST_CASE("prime field F_3") {
  ScalarField F = field_build(3, 1, 1);
  CHECK(F.n == 3);
  CHECK(F.q == 3);
  CHECK(F.modulus == std::vector<uint32_t>{0, 1});
  CHECK(F.add(1, 2) == 0);
  CHECK(F.mul(2, 2) == 1);
  CHECK(F.inv(2) == 2);
  CHECK(F.neg(1) == 2);
  CHECK(F.gen == 2);
  CHECK(F.elem_order(2) == 2);
  CHECK(F.from_int(-1) == 2);
  CHECK(F.from_int(7) == 1);
  CHECK_THROWS_AS(F.inv(0), Error);
}

TEST_CASE("F_9 as F_3[x]/(x^2+1)") {
  ScalarField F = field_build(3, 1, 2);
  CHECK(F.n == 9);
  // smallest irreducible monic quadratic over F_3 by integer code: x^2+1
  CHECK(F.modulus == std::vector<uint32_t>{1, 0, 1});
  // index 3 is xbar, with xbar^2 = -1 = 2
  CHECK(F.mul(3, 3) == 2);
  // smallest primitive element: 1+xbar (index 4); order 8
  CHECK(F.gen == 4);
  CHECK(F.elem_order(4) == 8);
  CHECK(F.elem_order(2) == 2);

  SUBCASE("Frobenius is the q-power map and an involution") {
    for (uint32_t x = 0; x < 9; ++x) {
      CHECK(F.frob_p(x, 1) == F.mul(F.mul(x, x), x));
      CHECK(F.frob_p(F.frob_p(x, 1), 1) == x);
      CHECK(F.frob_p(x, -1) == F.frob_p(x, 1));
    }
  }
  SUBCASE("field axioms on all pairs") {
    for (uint32_t x = 0; x < 9; ++x)
      for (uint32_t y = 0; y < 9; ++y) {
        CHECK(F.add(x, y) == F.add(y, x));
        CHECK(F.mul(x, y) == F.mul(y, x));
        if (y != 0) CHECK(F.mul(F.div(x, y), y) == x);
        CHECK(F.frob_p(F.add(x, y), 1) == F.add(F.frob_p(x, 1), F.frob_p(y, 1)));
      }
  }
  SUBCASE("sqrt of -1 exists") {
    uint32_t r = scalar_root(F, F.from_int(-1), 2);
    CHECK(F.mul(r, r) == F.from_int(-1));
    // canonical choice is the smaller of the two indices
    CHECK(F.mul(F.neg(r), F.neg(r)) == F.from_int(-1));
    CHECK(r < F.neg(r));
  }
  SUBCASE("subfield F_3 inside F_9") {
    auto sub = F.subfield_elems(3);
    CHECK(sub == std::vector<uint32_t>{0, 1, 2});
    CHECK(F.subfield_gen(3) == 2);
    CHECK(F.in_subfield(3, 3) == false);
  }
}

TEST_CASE("F_81 as F_3[x]/(x^4+x+2)") {
  ScalarField F = field_build(3, 1, 4);
  CHECK(F.n == 81);
  CHECK(F.modulus == std::vector<uint32_t>{2, 1, 0, 0, 1});
  CHECK(F.elem_order(F.gen) == 80);

  SUBCASE("Frobenius tower: s-fold q-power is identity") {
    for (uint32_t x = 0; x < 81; ++x) {
      CHECK(F.frob_q(x, 4) == x);
      CHECK(F.frob_q(F.frob_q(x, 1), -1) == x);
      CHECK(F.frob_q(x, 2) == F.frob_p(x, 2));
    }
  }
  SUBCASE("8th root of -1 lives here (torsion residue for rank 2 over F_3)") {
    uint32_t c = scalar_root(F, F.from_int(-1), 8);
    CHECK(F.pow(c, BigInt(8)) == F.from_int(-1));
    CHECK(F.elem_order(c) == 16);
  }
  SUBCASE("subfield F_9 inside F_81") {
    auto sub = F.subfield_elems(9);
    CHECK(sub.size() == 9);
    uint32_t g9 = F.subfield_gen(9);
    CHECK(F.elem_order(g9) == 8);
    for (uint32_t x : sub) CHECK(F.frob_p(F.frob_p(x, 1), 1) == x);
  }
  SUBCASE("canonical embedding F_9 -> F_81 is a field hom") {
    ScalarField F9 = field_build(3, 1, 2);
    for (uint32_t x = 0; x < 9; ++x)
      for (uint32_t y = 0; y < 9; ++y) {
        CHECK(F.embed(F9, F9.add(x, y)) == F.add(F.embed(F9, x), F.embed(F9, y)));
        CHECK(F.embed(F9, F9.mul(x, y)) == F.mul(F.embed(F9, x), F.embed(F9, y)));
      }
    CHECK(F.embed(F9, 0) == 0);
    CHECK(F.embed(F9, 1) == 1);
    CHECK(F.embed(F9, 2) == 2);  // prime subfield fixed
  }
}

TEST_CASE("root search failure reports the minimal sufficient extension") {
  ScalarField F3 = field_build(3, 1, 1);
  // x^8 = -1 has no solution in F_3; minimal s with one is 4.
  RootSearch r = scalar_root_search(F3, F3.from_int(-1), 8);
  CHECK(!r.ok);
  CHECK(r.min_s == 4);
  try {
    scalar_root(F3, F3.from_int(-1), 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Unsolvable);
    CHECK(e.min_s == 4);
  }
  // x^5 = 1: gcd(5, 2) = 1 so solvable, root is 1.
  CHECK(scalar_root(F3, 1, 5) == 1);
}

TEST_CASE("choose_s picks the smallest workable extension") {
  // q = 3, rank 2, k_2 = 1: needs 8th root of -1 -> s = 4.
  CHECK(choose_s(3, 1, 2, 2, 2) == 4);
  // q = 3, rank 1 (Carlitz): sqrt of -1 -> s = 2.
  CHECK(choose_s(3, 1, 1, 2, 2) == 2);
  // ord targets trivial (p = 2 style): s = r.
  CHECK(choose_s(2, 1, 3, 1, 1) == 3);
}

TEST_CASE("enumeration bound guard") {
  CHECK_THROWS_AS(field_build(3, 1, 12), Error);
  try {
    field_build(3, 1, 12);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Size);
  }
}
