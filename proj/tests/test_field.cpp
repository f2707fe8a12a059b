#include "doctest.h"

#include "ezdkit/field.hpp"

using namespace ezdkit;

TEST_CASE("prime field arithmetic") {
  auto F = Field::make(FieldSpec::prime(5));
  // 3*2 = 6 = 1 mod 5
  CHECK(F->mul(F->from_int(3), F->from_int(2)) == F->one());
  CHECK(F->add(F->from_int(4), F->from_int(3)) == F->from_int(2));
  CHECK(F->inv(F->from_int(2)) == F->from_int(3));
  CHECK(F->neg(F->from_int(1)) == F->from_int(4));
  CHECK(F->order() == 5);
}

TEST_CASE("non-prime modulus rejected") {
  CHECK_THROWS_AS((void)Field::make(FieldSpec::prime(6)), Error);
  try {
    (void)Field::make(FieldSpec::prime(9));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::NonPrimeModulus);
  }
}

TEST_CASE("extension field GF(9) via t^2+1") {
  // x*x = -1 = 2 in F_3[x]/(x^2+1)
  auto F = Field::make(FieldSpec::extension(3, {1, 0, 1}, "t"));
  FElem t = F->generator();
  CHECK(F->mul(t, t) == F->from_int(2));
  CHECK(F->order() == 9);
  // a * a^-1 = 1 for every nonzero element
  for (std::uint64_t i = 1; i < 9; ++i) {
    FElem a = F->element_at(i);
    CHECK(F->mul(a, F->inv(a)) == F->one());
  }
}

TEST_CASE("reducible modulus rejected") {
  // x^2 - 1 = (x-1)(x+1)
  try {
    (void)Field::make(FieldSpec::extension(3, {2, 0, 1}, "t"));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ReducibleModulus);
  }
  // degree-4 with a quadratic factor but no roots: (x^2+1)^2 over F_3
  try {
    (void)Field::make(FieldSpec::extension(3, {1, 0, 2, 0, 1}, "t"));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == Err::ReducibleModulus);
  }
}

TEST_CASE("rationals") {
  auto F = Field::make(FieldSpec::rationals());
  FElem q = F->from_fraction(mpq_class(2, 3));
  CHECK(F->inv(q) == F->from_fraction(mpq_class(3, 2)));
  CHECK(F->to_string(F->inv(q)) == "3/2");
  // canonicalization: 4/6 == 2/3
  CHECK(F->from_fraction(mpq_class(4, 6)) == q);
}

TEST_CASE("enumeration hits every element once") {
  auto F = Field::make(FieldSpec::extension(2, {1, 1, 0, 1}, "a")); // GF(8)
  REQUIRE(F->order() == 8);
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(F->index_of(F->element_at(i)) == i);
}

TEST_CASE("field axioms spot check") {
  for (auto spec : {FieldSpec::prime(7), FieldSpec::extension(3, {2, 2, 1}, "g"),
                    FieldSpec::rationals()}) {
    auto F = Field::make(spec);
    Rng rng(42);
    for (int iter = 0; iter < 200; ++iter) {
      FElem a = F->sample(rng), b = F->sample(rng), c = F->sample(rng);
      CHECK(F->add(a, b) == F->add(b, a));
      CHECK(F->mul(F->add(a, b), c) == F->add(F->mul(a, c), F->mul(b, c)));
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      if (!F->is_zero(a)) CHECK(F->mul(a, F->inv(a)) == F->one());
    }
  }
}
