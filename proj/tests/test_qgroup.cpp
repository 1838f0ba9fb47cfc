#include "hopfkit/qgroup.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "hopfkit/integrals.hpp"

using namespace hopfkit;

namespace {

UqAlgebra make_uq(char type, unsigned rank, unsigned p,
                  std::vector<int> word = {}) {
  CartanDatum d = CartanDatum::make(type, rank);
  if (word.empty()) word = default_reduced_word(d);
  return UqAlgebra(d, word, p);
}

Vec elem(const HopfAlgebra& H, const std::string& text) {
  return H.parse_element(text);
}

}  // namespace

TEST_CASE("root systems match the classical counts and 2rho") {
  for (unsigned n : {1u, 2u, 3u, 4u, 5u}) {
    auto d = CartanDatum::make('A', n);
    auto rs = root_system(d);
    CHECK(rs.N() == n * (n + 1) / 2);
  }
  auto a3 = root_system(CartanDatum::make('A', 3));
  CHECK(a3.two_rho == std::vector<int>{3, 4, 3});
  CHECK(root_system(CartanDatum::make('D', 4)).N() == 12);
  CHECK(root_system(CartanDatum::make('D', 5)).N() == 20);
  CHECK(root_system(CartanDatum::make('E', 6)).N() == 36);
  CHECK(root_system(CartanDatum::make('E', 7)).N() == 63);
  CHECK_THROWS_AS(CartanDatum::make('B', 2), QGroupError);
  CHECK_THROWS_AS(CartanDatum::make('D', 3), QGroupError);
}

TEST_CASE("beta sequences enumerate the positive roots; bad words refused") {
  auto d = CartanDatum::make('A', 2);
  auto rs = root_system(d);
  auto beta = beta_sequence(d, {1, 2, 1}, rs);
  CHECK(beta == std::vector<std::vector<int>>{{1, 0}, {1, 1}, {0, 1}});
  auto beta2 = beta_sequence(d, {2, 1, 2}, rs);
  CHECK(beta2 == std::vector<std::vector<int>>{{0, 1}, {1, 1}, {1, 0}});
  CHECK_THROWS_AS(beta_sequence(d, {1, 1, 2}, rs), QGroupError);
  CHECK_THROWS_AS(beta_sequence(d, {1, 2}, rs), QGroupError);
  auto d3 = CartanDatum::make('A', 3);
  auto rs3 = root_system(d3);
  CHECK(beta_sequence(d3, default_reduced_word(d3), rs3).size() == 6);
}

TEST_CASE("quantum integers at a primitive 2p-th root of unity") {
  auto F = FieldSpec::cyclotomic(6);  // p = 3
  CHECK(q_int(F, 1) == Scalar::one(F));
  CHECK(q_int(F, 3).is_zero());   // [p] = 0
  CHECK(q_int(F, 2) == Scalar::root_of_unity_power(F, 1) +
                           Scalar::root_of_unity_power(F, -1));
  CHECK(q_factorial(F, 2) == q_int(F, 2));
  CHECK(q_binom(F, 2, 1) == q_int(F, 2));
  CHECK(q_binom(F, 3, 0) == Scalar::one(F));
  // [4 choose 2] = [3] ([4]/[2]) vanishes at a primitive 6th root of unity.
  CHECK(q_binom(F, 4, 2).is_zero());
  CHECK(q_binom(F, 4, 1) == q_int(F, 4));
  CHECK_THROWS_AS(q_binom(F, 2, 3), QGroupError);
  CHECK_THROWS_AS(q_int(FieldSpec::rationals(), 2), QGroupError);
}

TEST_CASE("unsupported quantum groups are refused") {
  auto d = CartanDatum::make('A', 2);
  CHECK_THROWS_AS(UqAlgebra(d, {1, 2, 1}, 5), QGroupError);
  auto e8 = CartanDatum::make('E', 8);
  CHECK_THROWS_WITH_AS(UqAlgebra(e8, {}, 2), doctest::Contains("unsupported"),
                       QGroupError);
  auto d4 = CartanDatum::make('D', 4);
  CHECK_THROWS_AS(UqAlgebra(d4, {}, 2), QGroupError);
}

TEST_CASE("rank-1 quantum group at p = 2: structure constants") {
  auto U = make_uq('A', 1, 2);
  const auto& H = U.hopf();
  CHECK(U.dim() == 16);
  CHECK(H.dim() == 16);
  const auto& F = H.field();
  CHECK(F == FieldSpec::cyclotomic(4));

  Vec E = elem(H, "E"), Fv = elem(H, "F"), K = elem(H, "K");
  Vec one = H.unit();
  // K^4 = 1, E^2 = 0, F^2 = 0.
  CHECK(H.pow(K, 4) == one);
  CHECK(vec_is_zero(H.pow(E, 2)));
  CHECK(vec_is_zero(H.pow(Fv, 2)));
  // K E = q^2 E K.
  Scalar q = Scalar::gen(F);
  CHECK(H.multiply(K, E) == vec_scale(q * q, H.multiply(E, K)));
  CHECK(H.multiply(K, Fv) == vec_scale((q * q).inverse(), H.multiply(Fv, K)));
  // [E, F] = (K - K^{-1}) / (q - q^{-1}).
  Vec lhs = vec_sub(H.multiply(E, Fv), H.multiply(Fv, E));
  Vec rhs = vec_scale((q - q.inverse()).inverse(),
                      vec_sub(K, H.pow(K, 3)));
  CHECK(lhs == rhs);
  // Coproduct of E: 1 (x) E + E (x) K.
  SparseVec dE = H.coproduct(E);
  size_t iE = H.label_index("E"), iK = H.label_index("K");
  SparseVec expect = sparse_normalize(
      {{0 * 16 + iE, Scalar::one(F)}, {iE * 16 + iK, Scalar::one(F)}});
  CHECK(dE == expect);
  // Antipode: S(E) = -E K^{-1}.
  CHECK(H.antipode(E) == vec_scale(-Scalar::one(F), H.multiply(E, H.pow(K, 3))));

  auto rep = verify_axioms(H);
  CHECK(rep.ok);
  CHECK(rep.full_sweep);
}

TEST_CASE("rank-1 quantum groups: closed forms agree with the solvers") {
  for (unsigned p : {2u, 3u}) {
    CAPTURE(p);
    auto U = make_uq('A', 1, p);
    const auto& H = U.hopf();
    CHECK(U.dim() == 2 * p * p * p);

    auto rep = U.closed_form_checks();
    INFO(rep.text());
    CHECK(rep.ok);

    // Integral sits on the dual monomial F^{p-1} K^{p+1} E^{p-1}.
    Vec mu = right_integral(H);
    CHECK(mu == normalize_first_nonzero(U.integral_closed()));
    CHECK(U.monomial_index({p - 1}, {p + 1}, {p - 1}) ==
          size_t(std::find_if(mu.begin(), mu.end(),
                              [](const Scalar& c) { return !c.is_zero(); }) -
                 mu.begin()));

    CHECK(is_unimodular(H));
    CHECK(comodulus(H) == U.comodulus_closed());

    // Both candidates K^1 and K^{p+1} are pivots.
    auto cands = U.pivot_candidates();
    auto valid = U.pivot_candidate_valid();
    REQUIRE(cands.size() == 2);
    CHECK(valid == std::vector<bool>{true, true});
    for (const auto& g : cands) CHECK(H.verify_pivot(g));

    // Unibalanced: the comodulus is the square of the pivot.
    CHECK(is_unibalanced(H, H.require_pivot()));

    auto ax = verify_axioms(H);
    INFO(ax.text());
    CHECK(ax.ok);
  }
}

TEST_CASE("rank-2 quantum group at p = 2: Lusztig images and straightening") {
  auto U = make_uq('A', 2, 2);
  const auto& H = U.hopf();
  CHECK(U.dim() == 1024);
  const auto& F = H.field();
  Scalar q = Scalar::gen(F);

  // T_1(E_2) = -E_1 E_2 + q E_2 E_1 equals the composite root vector E12.
  Vec img = U.lusztig_image(1, 'E', 2);
  Vec e1 = elem(H, "E1"), e2 = elem(H, "E2");
  Vec expect = vec_add(vec_scale(-Scalar::one(F), H.multiply(e1, e2)),
                       vec_scale(q, H.multiply(e2, e1)));
  CHECK(img == expect);
  CHECK(img == U.root_vector_E(1));
  CHECK(img == elem(H, "E12"));
  // T_1(E_1) = -F_1 K_1^{-1}.
  CHECK(U.lusztig_image(1, 'E', 1) ==
        vec_scale(-Scalar::one(F), H.multiply(elem(H, "F1"),
                                              H.pow(elem(H, "K1"), 3))));

  // E2 E1 = q^{-1} E1 E2 + q^{-1} E12 (the derived straightening rule).
  Vec lhs = H.multiply(e2, e1);
  Vec rhs = vec_scale(q.inverse(),
                      vec_add(H.multiply(e1, e2), elem(H, "E12")));
  CHECK(lhs == rhs);

  // Nilpotency of the composite root vector.
  CHECK(vec_is_zero(H.pow(elem(H, "E12"), 2)));
  CHECK(vec_is_zero(H.pow(elem(H, "F12"), 2)));

  auto lus = U.lusztig_checks();
  INFO(lus.text());
  CHECK(lus.ok);

  auto grad = U.grading_checks();
  INFO(grad.text());
  CHECK(grad.ok);

  auto pc = U.verify_power_commutation();
  INFO(pc.text());
  CHECK(pc.ok);

  // Coproduct triangularity: Delta(E12) has extreme terms 1 (x) E12 and
  // E12 (x) K1 K2 with coefficient 1.
  size_t i12 = H.label_index("E12");
  size_t ik = H.label_index("K1*K2");
  SparseVec d12 = H.coproduct(H.basis_elem(i12));
  auto find = [&](size_t j, size_t k) {
    for (const auto& [idx, c] : d12)
      if (idx == uint64_t(j) * H.dim() + k) return c;
    return Scalar::zero(F);
  };
  CHECK(find(0, i12) == Scalar::one(F));
  CHECK(find(i12, ik) == Scalar::one(F));

  // Pivot parity: only eps = (0,0) survives at rank 2.
  CHECK(U.pivot_candidate_valid() ==
        std::vector<bool>{true, false, false, false});
  auto cf = U.closed_form_checks();
  INFO(cf.text());
  CHECK(cf.ok);
}

TEST_CASE("rank-2 quantum group at p = 3: power commutation and closed forms") {
  auto U = make_uq('A', 2, 3);
  CHECK(U.dim() == 3 * 3 * 3 * 3 * 3 * 3 * 6 * 6);  // p^{2N} (2p)^n

  auto pc = U.verify_power_commutation();
  INFO(pc.text());
  CHECK(pc.ok);

  auto grad = U.grading_checks();
  INFO(grad.text());
  CHECK(grad.ok);

  auto lus = U.lusztig_checks();
  INFO(lus.text());
  CHECK(lus.ok);

  auto cf = U.closed_form_checks();
  INFO(cf.text());
  CHECK(cf.ok);
}

TEST_CASE("PBW basis is independent of the reduced word (rank 2, p = 2)") {
  auto A = make_uq('A', 2, 2, {1, 2, 1});
  auto B = make_uq('A', 2, 2, {2, 1, 2});
  const auto& HA = A.hopf();
  const auto& HB = B.hopf();
  const auto& F = HA.field();

  // Change of basis: evaluate A's basis labels inside B.
  auto P = [&](const Vec& x) {
    Vec out = vec_zero(F, HB.dim());
    for (size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero())
        out = vec_add(out, vec_scale(x[i], HB.parse_element(HA.labels()[i])));
    return out;
  };

  // The comodulus maps on the nose; integral and cointegral up to a scalar.
  CHECK(P(A.comodulus_closed()) == B.comodulus_closed());

  Vec cB = normalize_first_nonzero(B.cointegral_closed());
  CHECK(normalize_first_nonzero(P(A.cointegral_closed())) == cB);

  // mu_B o P is proportional to mu_A: fix the ratio on A's integral monomial
  // and spot-check a deterministic sample of basis elements.
  Vec muA = A.integral_closed();
  Vec muB = B.integral_closed();
  size_t xstar = 0;
  while (muA[xstar].is_zero()) ++xstar;
  Scalar lambda = HB.eval_form(muB, P(HA.basis_elem(xstar)));
  CHECK(!lambda.is_zero());
  for (size_t s = 0; s < 64; ++s) {
    size_t i = (s * 2654435761u) % HA.dim();
    Scalar want = lambda * HA.eval_form(muA, HA.basis_elem(i));
    CHECK(HB.eval_form(muB, P(HA.basis_elem(i))) == want);
  }
}

TEST_CASE("rank-3 quantum group at p = 2: gradings at scale") {
  auto U = make_uq('A', 3, 2);
  CHECK(U.dim() == 262144);  // 2^12 * 4^3
  CHECK(U.betas().size() == 6);

  auto grad = U.grading_checks();
  INFO(grad.text());
  CHECK(grad.ok);

  auto pc = U.verify_power_commutation();
  INFO(pc.text());
  CHECK(pc.ok);

  auto lus = U.lusztig_checks();
  INFO(lus.text());
  CHECK(lus.ok);

  // Spot structure checks without materializing tensors.
  const auto& H = U.hopf();
  Vec e2 = H.parse_element("E2");
  CHECK(vec_is_zero(H.pow(e2, 2)));
  Vec k3 = H.parse_element("K3");
  CHECK(H.pow(k3, 4) == H.unit());
  // E1 and E3 commute (a_13 = 0).
  Vec e1 = H.parse_element("E1"), e3 = H.parse_element("E3");
  CHECK(H.multiply(e1, e3) == H.multiply(e3, e1));
}
