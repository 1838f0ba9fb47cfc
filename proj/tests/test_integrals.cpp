#include "hopfkit/integrals.hpp"

#include "doctest.h"
#include "hopfkit/modtrace.hpp"

using namespace hopfkit;

namespace {

Vec dual_of(const HopfAlgebra& H, const std::string& label) {
  Vec v = vec_zero(H.field(), H.dim());
  v[H.label_index(label)] = Scalar::one(H.field());
  return v;
}

}  // namespace

TEST_CASE("group algebras: integral is the dual of the identity") {
  for (auto make : {+[] { return group_algebra_cyclic(FieldSpec::rationals(), 2); },
                    +[] { return group_algebra_cyclic(FieldSpec::prime(2), 2); },
                    +[] { return group_algebra_cyclic(FieldSpec::rationals(), 3); }}) {
    HopfAlgebra H = make();
    Vec mu = right_integral(H);
    CHECK(mu == dual_of(H, "1"));
    // Commutative cocommutative: left and right integrals coincide.
    CHECK(left_integral(H) == mu);
  }
  auto S3 = group_algebra_s3(FieldSpec::rationals());
  CHECK(right_integral(S3) == dual_of(S3, "e"));
  CHECK(left_integral(S3) == dual_of(S3, "e"));
}

TEST_CASE("group algebras: cointegral is the sum of group elements") {
  auto H = group_algebra_s3(FieldSpec::rationals());
  Vec all = vec_zero(H.field(), 6);
  for (auto& c : all) c = Scalar::one(H.field());
  CHECK(cointegral(H, Side::Left) == all);
  CHECK(cointegral(H, Side::Right) == all);
  CHECK(is_unimodular(H));
  CHECK(comodulus(H) == H.unit());
  // Two-sided cointegral: the modulus is the counit.
  CHECK(modulus_of_cointegral(H) == H.counit_coeffs());
}

TEST_CASE("non-unimodular fixture: one-sided cointegrals disagree") {
  auto H = taft4(FieldSpec::rationals());
  Vec cl = cointegral(H, Side::Left);
  Vec cr = cointegral(H, Side::Right);
  // Left: x + gx, right: x - gx (leading coefficient 1 at x).
  CHECK(cl == H.parse_element("x + g*x"));
  CHECK(cr == H.parse_element("x - g*x"));
  CHECK_FALSE(is_unimodular(H));

  // Right integral is the dual of the top monomial gx.
  Vec mu = right_integral(H);
  CHECK(mu == dual_of(H, "gx"));
  Vec mul = left_integral(H);
  CHECK(mul == dual_of(H, "x"));

  // Comodulus a = g, so unibalanced fails for the pivot g (g^2 = 1 != a).
  CHECK(comodulus(H) == H.parse_element("g"));
  CHECK_FALSE(is_unibalanced(H, H.parse_element("g")));

  // Modulus of the left cointegral: alpha(g) = -1, so alpha != counit.
  Vec alpha = modulus_of_cointegral(H);
  CHECK(alpha[H.label_index("g")] == Scalar::from_int(H.field(), -1));
  CHECK(alpha != H.counit_coeffs());
}

TEST_CASE("symmetrise with trivial pivot returns the integral itself") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 2);
  Vec mu = right_integral(H);
  CHECK(symmetrise(H, mu, H.unit(), Side::Right) == mu);
  CHECK(symmetrise(H, mu, H.unit(), Side::Left) == mu);
  CHECK(is_unibalanced(H, H.unit()));
  // Invalid pivot rejected.
  CHECK_THROWS_AS(symmetrise(H, mu, H.parse_element("1 + g"), Side::Right),
                  IntegralError);
}

TEST_CASE("symmetrised integral on the pivotal fixture") {
  auto H = taft4(FieldSpec::rationals());
  Vec mu = right_integral(H);
  Vec g = H.parse_element("g");
  Vec mug = symmetrise(H, mu, g, Side::Right);
  // mu_g(b) = mu(g b): supported on x (g * x = gx).
  CHECK(mug == dual_of(H, "x"));
}

TEST_CASE("form properties: permutation pairing and degenerate counit") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 2);
  auto props = form_properties(H, right_integral(H));
  CHECK(props.symmetric);
  CHECK(props.nondegenerate);
  CHECK(props.gram.at(0, 0).is_one());
  CHECK(props.gram.at(0, 1).is_zero());
  CHECK(props.gram.at(1, 1).is_one());

  auto T = taft4(FieldSpec::rationals());
  auto eps = form_properties(T, T.counit_coeffs());
  CHECK(eps.symmetric);
  CHECK_FALSE(eps.nondegenerate);
}

TEST_CASE("HH0: commutator quotient dimensions and class reduction") {
  auto S3 = group_algebra_s3(FieldSpec::rationals());
  HH0 h(S3);
  CHECK(h.dim() == 3);  // one class per conjugacy class
  // Conjugate transpositions have equal classes.
  Vec s12 = S3.basis_elem(1), s13 = S3.basis_elem(2);
  CHECK(h.reduce(s12) == h.reduce(s13));
  CHECK(h.reduce(vec_sub(s12, s13)) == vec_zero(S3.field(), 3));

  auto T = taft4(FieldSpec::rationals());
  HH0 ht(T);
  CHECK(ht.dim() == 2);  // classes of 1 and g; x, gx are commutators
  CHECK(ht.reduce(T.parse_element("x")) == vec_zero(T.field(), 2));
}

TEST_CASE("center/HH0 pairing on semisimple group algebras") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 3);
  auto rep = center_hh0_pairing(H, H.unit());
  CHECK(rep.gram.rows() == 3);
  CHECK(rep.nondegenerate);
  auto S3 = group_algebra_s3(FieldSpec::rationals());
  auto rep3 = center_hh0_pairing(S3, S3.unit());
  CHECK(rep3.gram.rows() == 3);
  CHECK(rep3.nondegenerate);
  // Not defined on non-unimodular input.
  CHECK_THROWS_AS(center_hh0_pairing(taft4(FieldSpec::rationals()),
                                     taft4(FieldSpec::rationals())
                                         .parse_element("g")),
                  IntegralError);
}

TEST_CASE("solver reports non-1-dimensional solution spaces") {
  // A broken "Hopf algebra": Q[Z/2] with coproduct Delta(u) = u (x) u
  // replaced by u (x) 1 (still coassociative-shaped data but the integral
  // system degenerates).
  FieldSpec F = FieldSpec::rationals();
  Scalar one = Scalar::one(F);
  std::vector<std::vector<SparseVec>> mult = {
      {{{0, one}}, {{1, one}}}, {{{1, one}}, {{0, one}}}};
  std::vector<CoprodList> cop = {{{0, 0, one}}, {{0, 1, one}}};
  std::vector<SparseVec> anti = {{{0, one}}, {{1, one}}};
  Vec unit = {one, Scalar::zero(F)}, counit = {one, one};
  HopfAlgebra H(F, {"1", "u"}, unit, std::move(mult), std::move(cop), counit,
                std::move(anti));
  CHECK_THROWS_AS(right_integral(H), IntegralError);
}
