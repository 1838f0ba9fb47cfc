#include "hopfkit/integrals.hpp"

#include "hopfkit/modtrace.hpp"

namespace hopfkit {

namespace {

// Solves a homogeneous system given row-by-row and requires the solution
// space to be exactly 1-dimensional; returns the normalized solution.
Vec solve_line(const FieldSpec& F, size_t n,
               const std::function<void(const std::function<void(Vec)>&)>& emit,
               const char* what) {
  std::vector<Vec> rows;
  emit([&](Vec r) {
    if (!vec_is_zero(r)) rows.push_back(std::move(r));
  });
  ExactMatrix M = rows.empty() ? ExactMatrix(F, 0, n)
                               : ExactMatrix::from_rows(F, rows);
  auto ker = M.nullspace();
  if (ker.size() != 1)
    throw IntegralError(std::string(what) + ": solution space has dimension " +
                        std::to_string(ker.size()) + ", expected 1");
  return normalize_first_nonzero(ker[0]);
}

}  // namespace

Vec right_integral(const HopfAlgebra& H) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  // For each basis x = b_i and coordinate m:
  //   sum_{(j,k) in Delta(b_i)} c * mu_j * [b_k]_m - mu_i * [1]_m = 0.
  return solve_line(
      F, n,
      [&](const std::function<void(Vec)>& add) {
        for (size_t i = 0; i < n; ++i) {
          std::vector<Vec> rows(n, vec_zero(F, n));  // one per coordinate m
          for (const auto& t : H.coprod(i)) rows[t.k][t.j] += t.c;
          for (size_t m = 0; m < n; ++m) {
            rows[m][i] -= H.unit()[m];
            add(std::move(rows[m]));
          }
        }
      },
      "right integral");
}

Vec left_integral(const HopfAlgebra& H) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  Vec mul = solve_line(
      F, n,
      [&](const std::function<void(Vec)>& add) {
        for (size_t i = 0; i < n; ++i) {
          std::vector<Vec> rows(n, vec_zero(F, n));
          for (const auto& t : H.coprod(i)) rows[t.j][t.k] += t.c;
          for (size_t m = 0; m < n; ++m) {
            rows[m][i] -= H.unit()[m];
            add(std::move(rows[m]));
          }
        }
      },
      "left integral");
  // Cross-check: mu_l is proportional to x -> mu(S(x)).
  Vec mu = right_integral(H);
  Vec muS = vec_zero(F, n);
  for (size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : H.antipode_col(i)) muS[i] += c * mu[k];
  if (normalize_first_nonzero(muS) != mul)
    throw IntegralError(
        "left integral is not proportional to the right integral composed "
        "with the antipode");
  return mul;
}

Vec cointegral(const HopfAlgebra& H, Side side) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  // Left: b_i c = eps(b_i) c; right: c b_i = eps(b_i) c.
  return solve_line(
      F, n,
      [&](const std::function<void(Vec)>& add) {
        for (size_t i = 0; i < n; ++i) {
          std::vector<Vec> rows(n, vec_zero(F, n));
          for (size_t j = 0; j < n; ++j) {
            const SparseVec& prod =
                side == Side::Left ? H.mult(i, j) : H.mult(j, i);
            for (const auto& [m, c] : prod) rows[m][j] += c;
            rows[j][j] -= H.counit_coeffs()[i];
          }
          for (size_t m = 0; m < n; ++m) add(std::move(rows[m]));
        }
      },
      side == Side::Left ? "left cointegral" : "right cointegral");
}

bool is_unimodular(const HopfAlgebra& H) {
  // Both are normalized to leading coefficient 1, so same line <=> equal.
  return cointegral(H, Side::Left) == cointegral(H, Side::Right);
}

Vec comodulus(const HopfAlgebra& H) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  Vec mu = right_integral(H);
  // a = (id (x) mu) Delta(x0) / mu(x0) for any basis x0 with mu(x0) != 0.
  auto partial = [&](size_t i) {
    Vec v = vec_zero(F, n);
    for (const auto& t : H.coprod(i)) v[t.j] += t.c * mu[t.k];
    return v;
  };
  size_t i0 = n;
  for (size_t i = 0; i < n; ++i)
    if (!mu[i].is_zero()) {
      i0 = i;
      break;
    }
  if (i0 == n) throw IntegralError("comodulus: right integral vanished");
  Vec a = vec_scale(mu[i0].inverse(), partial(i0));
  for (size_t i = 0; i < n; ++i)
    if (partial(i) != vec_scale(mu[i], a))
      throw IntegralError("comodulus: defining identity fails on basis " +
                          H.labels()[i]);
  if (!H.is_group_like(a))
    throw IntegralError("comodulus: result is not group-like");
  // mu(S(x)) = mu(a x) for all basis x.
  for (size_t i = 0; i < n; ++i) {
    Scalar lhs = H.eval_form(mu, H.antipode(H.basis_elem(i)));
    Scalar rhs = H.eval_form(mu, H.multiply(a, H.basis_elem(i)));
    if (lhs != rhs)
      throw IntegralError(
          "comodulus: mu(S(x)) != mu(a x) on basis " + H.labels()[i]);
  }
  return a;
}

Vec modulus_of_cointegral(const HopfAlgebra& H) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  Vec c = cointegral(H, Side::Left);
  size_t lead = 0;
  while (c[lead].is_zero()) ++lead;  // c is normalized, c[lead] == 1
  Vec alpha = vec_zero(F, n);
  for (size_t i = 0; i < n; ++i) {
    Vec v = H.multiply(c, H.basis_elem(i));
    alpha[i] = v[lead];
    if (v != vec_scale(alpha[i], c))
      throw IntegralError(
          "cointegral modulus: c*x is not proportional to c at basis " +
          H.labels()[i]);
  }
  // alpha is an algebra map: alpha(xy) = alpha(x)alpha(y), alpha(1) = 1.
  if (!H.eval_form(alpha, H.unit()).is_one())
    throw IntegralError("cointegral modulus: alpha(1) != 1");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Scalar lhs = Scalar::zero(F);
      for (const auto& [k, v] : H.mult(i, j)) lhs += v * alpha[k];
      if (lhs != alpha[i] * alpha[j])
        throw IntegralError(
            "cointegral modulus: alpha is not multiplicative at (" +
            H.labels()[i] + ", " + H.labels()[j] + ")");
    }
  return alpha;
}

Vec symmetrise(const HopfAlgebra& H, const Vec& mu, const Vec& g, Side side) {
  const size_t n = H.dim();
  const FieldSpec& F = H.field();
  std::string why;
  if (!H.verify_pivot(g, &why))
    throw IntegralError("symmetrise: invalid pivot: " + why);
  Vec gg = side == Side::Right ? g : H.group_like_inverse(g);
  Vec out = vec_zero(F, n);
  for (size_t i = 0; i < n; ++i)
    out[i] = H.eval_form(mu, H.multiply(gg, H.basis_elem(i)));
  // One-sided invariance:
  //   right: sum mu(g x_(1)) g x_(2) = mu(g x) 1
  //   left:  sum g^{-1} x_(1) mu(g^{-1} x_(2)) = mu(g^{-1} x) 1
  for (size_t i = 0; i < n; ++i) {
    Vec acc = vec_zero(F, n);
    for (const auto& t : H.coprod(i)) {
      if (side == Side::Right)
        acc = vec_add(acc, vec_scale(t.c * out[t.j],
                                     H.multiply(gg, H.basis_elem(t.k))));
      else
        acc = vec_add(acc, vec_scale(t.c * out[t.k],
                                     H.multiply(gg, H.basis_elem(t.j))));
    }
    if (acc != vec_scale(out[i], H.unit()))
      throw IntegralError(
          "symmetrise: one-sided invariance fails on basis " + H.labels()[i]);
  }
  return out;
}

FormProperties form_properties(const HopfAlgebra& H, const Vec& t) {
  const size_t n = H.dim();
  ExactMatrix gram(H.field(), n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Scalar s = Scalar::zero(H.field());
      for (const auto& [k, c] : H.mult(i, j)) s += c * t[k];
      gram.at(i, j) = s;
    }
  bool symmetric = true;
  for (size_t i = 0; i < n && symmetric; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (gram.at(i, j) != gram.at(j, i)) {
        symmetric = false;
        break;
      }
  bool nondeg = gram.rank() == n;
  return {symmetric, std::move(gram), nondeg};
}

bool is_unibalanced(const HopfAlgebra& H, const Vec& g) {
  std::string why;
  if (!H.verify_pivot(g, &why))
    throw IntegralError("is_unibalanced: invalid pivot: " + why);
  Vec a = comodulus(H);
  bool by_comodulus = (a == H.multiply(g, g));
  // Equivalent condition: mu_g = mu_l_{g^{-1}} with mu_l := mu o S.
  Vec mu = right_integral(H);
  Vec mul = vec_zero(H.field(), H.dim());
  for (size_t i = 0; i < H.dim(); ++i)
    for (const auto& [k, c] : H.antipode_col(i)) mul[i] += c * mu[k];
  Vec mug = symmetrise(H, mu, g, Side::Right);
  Vec mulg = symmetrise(H, mul, g, Side::Left);
  if (by_comodulus != (mug == mulg))
    throw IntegralError(
        "is_unibalanced: comodulus criterion disagrees with the "
        "symmetrised-integral criterion");
  return by_comodulus;
}

PairingReport center_hh0_pairing(const HopfAlgebra& H, const Vec& g) {
  if (!is_unimodular(H))
    throw IntegralError("center_hh0_pairing: algebra is not unimodular");
  Vec mu = right_integral(H);
  Vec mug = symmetrise(H, mu, g, Side::Right);
  auto Z = H.center();
  HH0 hh0(H);
  if (Z.size() != hh0.dim())
    throw IntegralError("center_hh0_pairing: dim Z = " +
                        std::to_string(Z.size()) + " but dim HH0 = " +
                        std::to_string(hh0.dim()));
  ExactMatrix gram(H.field(), Z.size(), hh0.dim());
  for (size_t r = 0; r < Z.size(); ++r)
    for (size_t s = 0; s < hh0.dim(); ++s)
      gram.at(r, s) = H.eval_form(
          mug, H.multiply(Z[r], H.basis_elem(hh0.rep_indices()[s])));
  bool nondeg = gram.rank() == Z.size();
  return {std::move(gram), nondeg};
}

}  // namespace hopfkit
