#include "doctest.h"

#include <random>

#include "hopfkit/field.hpp"

using namespace hopfkit;

TEST_CASE("rational arithmetic") {
  FieldSpec Q = FieldSpec::rationals();
  Scalar a = parse_scalar(Q, "1/2");
  Scalar b = parse_scalar(Q, "1/3");
  CHECK((a + b).str() == "5/6");
  CHECK((a * b).str() == "1/6");
  CHECK((a - a).is_zero());
  CHECK((a / b).str() == "3/2");
  CHECK(Scalar::from_int(Q, -7).str() == "-7");
}

TEST_CASE("cyclotomic polynomials") {
  auto phi1 = cyclotomic_polynomial(1);   // z - 1
  CHECK(phi1.size() == 2);
  CHECK(phi1[0] == -1);
  auto phi4 = cyclotomic_polynomial(4);   // z^2 + 1
  REQUIRE(phi4.size() == 3);
  CHECK(phi4[0] == 1);
  CHECK(phi4[1] == 0);
  CHECK(phi4[2] == 1);
  auto phi6 = cyclotomic_polynomial(6);   // z^2 - z + 1
  REQUIRE(phi6.size() == 3);
  CHECK(phi6[0] == 1);
  CHECK(phi6[1] == -1);
  CHECK(phi6[2] == 1);
  auto phi12 = cyclotomic_polynomial(12); // z^4 - z^2 + 1
  REQUIRE(phi12.size() == 5);
  CHECK(phi12[2] == -1);
}

TEST_CASE("cyclotomic arithmetic") {
  FieldSpec F4 = FieldSpec::cyclotomic(4);
  Scalar z = Scalar::gen(F4);
  CHECK((z * z) == Scalar::from_int(F4, -1));  // z^2 = -1 in Q[z]/(z^2+1)
  CHECK(z.pow(4).is_one());

  FieldSpec F6 = FieldSpec::cyclotomic(6);
  Scalar z6 = Scalar::gen(F6);
  CHECK((z6 + z6.pow(5)) == Scalar::one(F6));  // z + z^5 = 1 mod Phi_6
  CHECK(z6.pow(6).is_one());
  CHECK(Scalar::root_of_unity_power(F6, -1) == z6.pow(5));

  // inverse of a generic element
  Scalar a = parse_scalar(F6, "1/2*z - 2");
  CHECK((a * a.inverse()).is_one());
}

TEST_CASE("prime field arithmetic") {
  FieldSpec F7 = FieldSpec::prime(7);
  Scalar a = Scalar::from_int(F7, 5);
  Scalar b = Scalar::from_int(F7, 3);
  CHECK((a * b) == Scalar::from_int(F7, 1));
  CHECK((a + b) == Scalar::from_int(F7, 1));
  CHECK(a.inverse() == Scalar::from_int(F7, 3));
  CHECK(Scalar::from_rational(F7, mpq_class(1, 2)) == Scalar::from_int(F7, 4));
  CHECK_THROWS_AS(FieldSpec::prime(6), FieldError);
}

TEST_CASE("scalar parse/print round trip") {
  FieldSpec F4 = FieldSpec::cyclotomic(4);
  for (const char* text : {"1/2*z - 2", "z", "-z", "0", "3", "2*z + 1/3"}) {
    Scalar s = parse_scalar(F4, text);
    CHECK(parse_scalar(F4, s.str()) == s);
  }
  // Spec-level example from the grammar: parses over a field where z^3 lives.
  FieldSpec F16 = FieldSpec::cyclotomic(16);
  Scalar s = parse_scalar(F16, "1/2*z^3 - 2");
  CHECK(parse_scalar(F16, s.str()) == s);
  CHECK(s.str() == "1/2*z^3 - 2");

  FieldSpec Q = FieldSpec::rationals();
  CHECK_THROWS_AS(parse_scalar(Q, "z + 1"), FieldError);
  CHECK_THROWS_AS(parse_scalar(Q, ""), ParseError);
  CHECK_THROWS_AS(parse_scalar(Q, "1//2"), ParseError);
  CHECK_THROWS_AS(parse_scalar(Q, "1/0"), ParseError);
}

TEST_CASE("field mismatch is rejected") {
  Scalar a = Scalar::one(FieldSpec::rationals());
  Scalar b = Scalar::one(FieldSpec::prime(5));
  CHECK_THROWS_AS(a + b, FieldMismatchError);
}

TEST_CASE("field axioms on seeded random elements") {
  std::mt19937_64 rng(20260826);
  auto random_scalar = [&](const FieldSpec& F) {
    if (F.kind() == FieldKind::Cyclotomic) {
      Scalar s = Scalar::zero(F);
      for (unsigned k = 0; k < F.degree(); ++k) {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 4);
        s += Scalar::from_rational(F, mpq_class(num, den)) *
             Scalar::gen(F).pow(k);
      }
      return s;
    }
    long num = static_cast<long>(rng() % 21) - 10;
    long den = 1 + static_cast<long>(rng() % 4);  // stays invertible mod 5
    return Scalar::from_rational(F, mpq_class(num, den));
  };
  for (FieldSpec F : {FieldSpec::rationals(), FieldSpec::prime(5),
                      FieldSpec::cyclotomic(6), FieldSpec::cyclotomic(12)}) {
    for (int it = 0; it < 50; ++it) {
      Scalar a = random_scalar(F), b = random_scalar(F), c = random_scalar(F);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("field names round trip") {
  for (FieldSpec F : {FieldSpec::rationals(), FieldSpec::prime(7),
                      FieldSpec::cyclotomic(6)}) {
    CHECK(FieldSpec::from_name(F.name()) == F);
  }
  CHECK_THROWS_AS(FieldSpec::from_name("RR"), ParseError);
}
