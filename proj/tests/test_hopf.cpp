#include "hopfkit/hopf.hpp"

#include <set>

#include "doctest.h"

using namespace hopfkit;

TEST_CASE("cyclic group algebra satisfies all axioms") {
  for (auto F : {FieldSpec::rationals(), FieldSpec::prime(5),
                 FieldSpec::cyclotomic(4)}) {
    auto H = group_algebra_cyclic(F, 4);
    auto rep = verify_axioms(H);
    INFO(rep.text());
    CHECK(rep.ok);
    CHECK(rep.full_sweep);
    CHECK(rep.triples_checked == 64);
  }
}

TEST_CASE("S3 group algebra: axioms, noncommutativity, center") {
  auto H = group_algebra_s3(FieldSpec::rationals());
  auto rep = verify_axioms(H);
  INFO(rep.text());
  CHECK(rep.ok);

  // s12 * s13 != s13 * s12
  Vec a = H.basis_elem(1), b = H.basis_elem(2);
  CHECK(H.multiply(a, b) != H.multiply(b, a));

  // Q[S3] has a 3-dimensional center (one class sum per conjugacy class).
  auto Z = H.center();
  CHECK(Z.size() == 3);
  // Each center vector commutes with every basis element.
  for (const auto& z : Z)
    for (size_t i = 0; i < 6; ++i) {
      Vec bi = H.basis_elem(i);
      CHECK(H.multiply(z, bi) == H.multiply(bi, z));
    }
  // Determinism: recomputing gives the identical basis.
  auto Z2 = H.center();
  CHECK(Z == Z2);
}

TEST_CASE("group-like detection and inverse") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 5);
  Vec g = H.basis_elem(1);
  CHECK(H.is_group_like(g));
  CHECK(H.is_group_like(H.unit()));
  Vec sum = vec_add(g, H.basis_elem(2));
  CHECK_FALSE(H.is_group_like(sum));
  Vec ginv = H.group_like_inverse(g);
  CHECK(ginv == H.basis_elem(4));
  CHECK(H.multiply(g, ginv) == H.unit());
}

TEST_CASE("4-dimensional pivotal fixture: structure and axioms") {
  auto H = taft4(FieldSpec::rationals());
  auto rep = verify_axioms(H);
  INFO(rep.text());
  CHECK(rep.ok);

  Vec g = H.parse_element("g"), x = H.parse_element("x");
  CHECK(H.multiply(g, g) == H.unit());
  CHECK(vec_is_zero(H.multiply(x, x)));
  // gx = -xg
  CHECK(H.multiply(g, x) == vec_scale(Scalar::from_int(H.field(), -1),
                                      H.multiply(x, g)));
  // S(x) = gx, S(gx) = -x, S^2(x) = -x
  CHECK(H.antipode(x) == H.parse_element("g*x"));
  CHECK(H.antipode(H.antipode(x)) ==
        vec_scale(Scalar::from_int(H.field(), -1), x));
  // Pivot is g; the unit is not a pivot here because S^2 != id.
  std::string why;
  CHECK(H.verify_pivot(H.parse_element("g"), &why));
  CHECK_FALSE(H.verify_pivot(H.unit(), &why));
  CHECK(why.find("S^2") != std::string::npos);
}

TEST_CASE("verify_pivot rejects non-group-like candidates") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 3);
  std::string why;
  CHECK(H.verify_pivot(H.unit(), &why));
  CHECK_FALSE(H.verify_pivot(H.parse_element("1 + g"), &why));
  CHECK(why == "pivot candidate is not group-like");
}

TEST_CASE("corrupted antipode is reported with a witness") {
  // Z/2 group algebra with S(g) := 1 (wrong).
  FieldSpec F = FieldSpec::rationals();
  Scalar one = Scalar::one(F);
  std::vector<std::vector<SparseVec>> mult = {
      {{{0, one}}, {{1, one}}}, {{{1, one}}, {{0, one}}}};
  std::vector<CoprodList> cop = {{{0, 0, one}}, {{1, 1, one}}};
  std::vector<SparseVec> anti = {{{0, one}}, {{0, one}}};
  Vec unit = {one, Scalar::zero(F)}, counit = {one, one};
  HopfAlgebra H(F, {"1", "g"}, unit, std::move(mult), std::move(cop), counit,
                std::move(anti));
  auto rep = verify_axioms(H);
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& f : rep.failures)
    if (f.find("antipode axiom, witness g") != std::string::npos) found = true;
  INFO(rep.text());
  CHECK(found);
}

TEST_CASE("corrupted coproduct breaks coassociativity with a witness") {
  FieldSpec F = FieldSpec::rationals();
  Scalar one = Scalar::one(F);
  std::vector<std::vector<SparseVec>> mult = {
      {{{0, one}}, {{1, one}}}, {{{1, one}}, {{0, one}}}};
  // Delta(g) := g (x) 1 is not coassociative together with counit axiom.
  std::vector<CoprodList> cop = {{{0, 0, one}}, {{1, 0, one}}};
  std::vector<SparseVec> anti = {{{0, one}}, {{1, one}}};
  Vec unit = {one, Scalar::zero(F)}, counit = {one, one};
  HopfAlgebra H(F, {"1", "g"}, unit, std::move(mult), std::move(cop), counit,
                std::move(anti));
  auto rep = verify_axioms(H);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("lazy construction memoizes and agrees with eager") {
  FieldSpec F = FieldSpec::cyclotomic(6);
  auto E = group_algebra_cyclic(F, 6);
  int mult_calls = 0;
  HopfAlgebra::LazyOps ops;
  ops.mult = [&](size_t i, size_t j) {
    ++mult_calls;
    return E.mult(i, j);
  };
  ops.coprod = [&](size_t i) { return E.coprod(i); };
  ops.antipode = [&](size_t i) { return E.antipode_col(i); };
  HopfAlgebra L(F, E.labels(), E.unit(), E.counit_coeffs(), ops, E.unit(),
                {0, 1});
  Vec g = L.basis_elem(1);
  Vec p1 = L.multiply(g, g);
  int after_first = mult_calls;
  Vec p2 = L.multiply(g, g);
  CHECK(p1 == p2);
  CHECK(mult_calls == after_first);  // memoized
  CHECK(p1 == E.multiply(g, g));
  auto rep = verify_axioms(L);
  INFO(rep.text());
  CHECK(rep.ok);
}

TEST_CASE("budget policy kicks in above the full-sweep bound") {
  auto H = group_algebra_cyclic(FieldSpec::prime(3), 10);
  AxiomBudget b;
  b.full_sweep_max_dim = 8;
  b.random_triples = 500;
  auto rep = verify_axioms(H, b);
  INFO(rep.text());
  CHECK(rep.ok);
  CHECK_FALSE(rep.full_sweep);
  CHECK(rep.policy.find("seeded random") != std::string::npos);
  // Same seed => same count; different path than full sweep.
  auto rep2 = verify_axioms(H, b);
  CHECK(rep.triples_checked == rep2.triples_checked);
}

TEST_CASE("opposite algebra reverses products and keeps axioms for groups") {
  auto H = group_algebra_s3(FieldSpec::rationals());
  auto Hop = H.opposite();
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) CHECK(Hop.mult(i, j) == H.mult(j, i));
  CHECK(Hop.center() == H.center());
}

TEST_CASE("element expression parsing and printing") {
  auto H = group_algebra_cyclic(FieldSpec::rationals(), 4);
  CHECK(H.parse_element("g^3") == H.basis_elem(3));
  CHECK(H.parse_element("g*g*g*g") == H.unit());
  CHECK(H.parse_element("1/2*g + 1/2*g") == H.basis_elem(1));
  CHECK(H.parse_element("(1 + g)^2") == H.parse_element("1 + 2*g + g2"));
  CHECK(H.parse_element("-g + g") == vec_zero(H.field(), 4));
  CHECK(H.element_str(H.parse_element("2*g + g3")) == "2*g + g3");
  // Round trip through the printer.
  Vec v = H.parse_element("1/3 + g - 5*g2");
  CHECK(H.parse_element(H.element_str(v)) == v);
  CHECK_THROWS_AS(H.parse_element("h + g"), ParseError);
  CHECK_THROWS_AS(H.parse_element("g +"), ParseError);
  CHECK_THROWS_AS(H.parse_element("(g"), ParseError);

  // "z" means the root of unity over a cyclotomic field.
  auto HC = group_algebra_cyclic(FieldSpec::cyclotomic(4), 2);
  Vec w = HC.parse_element("z*g + z^2");
  CHECK(w[0] == Scalar::from_int(HC.field(), -1));
  CHECK(w[1] == Scalar::gen(HC.field()));
  CHECK_THROWS_AS(H.parse_element("z*g"), ParseError);  // no z over QQ
}

TEST_CASE("normalize_first_nonzero") {
  FieldSpec F = FieldSpec::rationals();
  Vec v = {Scalar::zero(F), Scalar::from_int(F, -2), Scalar::from_int(F, 6)};
  Vec w = normalize_first_nonzero(v);
  CHECK(w[1].is_one());
  CHECK(w[2] == Scalar::from_int(F, -3));
  CHECK_THROWS_AS(normalize_first_nonzero(vec_zero(F, 3)), HopfError);
}

TEST_CASE("mult/antipode matrices and form evaluation") {
  auto H = taft4(FieldSpec::rationals());
  Vec x = H.parse_element("x");
  auto Lx = H.left_mult_matrix(x);
  // L_x applied to g equals x*g.
  CHECK(Lx.apply(H.basis_elem(2)) == H.multiply(x, H.basis_elem(2)));
  auto Rx = H.right_mult_matrix(x);
  CHECK(Rx.apply(H.basis_elem(2)) == H.multiply(H.basis_elem(2), x));
  CHECK(H.antipode_matrix().rank() == 4);
  Vec form = vec_zero(H.field(), 4);
  form[3] = Scalar::from_int(H.field(), 7);
  CHECK(H.eval_form(form, H.parse_element("2*g*x")) ==
        Scalar::from_int(H.field(), 14));
  CHECK(H.form_str(form) == "7*(gx)^*");
}

#include <sstream>

#include "hopfkit/hopffile.hpp"

TEST_CASE("hopf file round trip preserves structure tensors") {
  for (auto build : {+[] { return taft4(FieldSpec::rationals()); },
                     +[] { return group_algebra_s3(FieldSpec::rationals()); },
                     +[] { return group_algebra_cyclic(FieldSpec::cyclotomic(4), 4); },
                     +[] { return group_algebra_cyclic(FieldSpec::prime(2), 2); }}) {
    HopfAlgebra H = build();
    std::string text = write_hopf(H);
    std::istringstream in(text);
    HopfAlgebra R = read_hopf(in);
    REQUIRE(R.dim() == H.dim());
    CHECK(R.field().name() == H.field().name());
    CHECK(R.labels() == H.labels());
    CHECK(R.unit() == H.unit());
    CHECK(R.counit_coeffs() == H.counit_coeffs());
    CHECK(R.pivot() == H.pivot());
    for (size_t i = 0; i < H.dim(); ++i) {
      CHECK(R.antipode_col(i) == H.antipode_col(i));
      CHECK(R.coproduct(R.basis_elem(i)) == H.coproduct(H.basis_elem(i)));
      for (size_t j = 0; j < H.dim(); ++j) CHECK(R.mult(i, j) == H.mult(i, j));
    }
    // Serialization is deterministic down to the byte.
    CHECK(write_hopf(R) == text);
  }
}

TEST_CASE("hopf file errors are reported distinctly") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_hopf(in);
  };
  CHECK_THROWS_AS(parse("not json"), HopfFileError);
  CHECK_THROWS_AS(parse("{}"), HopfFileError);
  CHECK_THROWS_AS(
      parse(R"({"field":{"kind":"Septic"},"dim":1,"basis":["1"],"unit":["1"],
               "mult":[],"coproduct":[],"counit":["1"],"antipode":[]})"),
      HopfFileError);
  // Out-of-range index.
  CHECK_THROWS_AS(
      parse(R"({"field":{"kind":"Rational"},"dim":1,"basis":["1"],"unit":["1"],
               "mult":[[0,0,5,"1"]],"coproduct":[[0,0,0,"1"]],"counit":["1"],
               "antipode":[[0,0,"1"]]})"),
      HopfFileError);
  // Malformed coefficient surfaces as a parse error.
  CHECK_THROWS_AS(
      parse(R"({"field":{"kind":"Rational"},"dim":1,"basis":["1"],"unit":["1//2"],
               "mult":[[0,0,0,"1"]],"coproduct":[[0,0,0,"1"]],"counit":["1"],
               "antipode":[[0,0,"1"]]})"),
      ParseError);
}

TEST_CASE("static fixture files load and pass verify_axioms") {
  for (const char* name : {"qz2.hopf", "qz3.hopf", "gf2z2.hopf", "taft4.hopf",
                           "qs3.hopf"}) {
    HopfAlgebra H = read_hopf_file(std::string(HOPFKIT_FIXTURE_DIR) + "/" + name);
    auto rep = verify_axioms(H);
    INFO(name << "\n" << rep.text());
    CHECK(rep.ok);
  }
}
