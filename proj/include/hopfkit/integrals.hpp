// Integrals and cointegrals of a finite-dimensional Hopf algebra, solved
// exactly from their defining linear systems:
//
//   right integral   (mu (x) id) Delta(x) = mu(x) 1      (a linear form)
//   left integral    (id (x) mu_l) Delta(x) = mu_l(x) 1
//   left cointegral  x c = eps(x) c                      (an element)
//   right cointegral c x = eps(x) c
//
// plus the comodulus a with (id (x) mu) Delta(x) = mu(x) a, the modulus of
// the left cointegral (c x = alpha(x) c), pivot-symmetrised integrals
// mu_g(x) = mu(g x), and the derived unimodular/unibalanced predicates.
// All solutions are normalized so the first nonzero coordinate is 1.

#pragma once

#include "hopfkit/hopf.hpp"

namespace hopfkit {

struct IntegralError : HopfError {
  using HopfError::HopfError;
};

enum class Side { Left, Right };

// Normalized solution of the defining system; throws IntegralError unless
// the solution space is exactly 1-dimensional.
Vec right_integral(const HopfAlgebra& H);

// As above for the left system; additionally asserts proportionality to
// x -> mu(S(x)) where mu is the right integral.
Vec left_integral(const HopfAlgebra& H);

Vec cointegral(const HopfAlgebra& H, Side side);

// True iff the left and right cointegrals span the same line.
bool is_unimodular(const HopfAlgebra& H);

// The group-like element a with (id (x) mu) Delta(x) = mu(x) a; verifies the
// identity on every basis element, that a is group-like, and that
// mu(S(x)) = mu(a x) for all basis x.
Vec comodulus(const HopfAlgebra& H);

// The form alpha with c x = alpha(x) c for the left cointegral c; alpha is
// verified to be an algebra map on basis pairs.
Vec modulus_of_cointegral(const HopfAlgebra& H);

// Side == Right: x -> mu(g x);  Side == Left: x -> mu(g^{-1} x) (pass the
// left integral as mu).  Requires verify_pivot(H, g); asserts the defining
// one-sided invariance of the result on every basis element.
Vec symmetrise(const HopfAlgebra& H, const Vec& mu, const Vec& g, Side side);

struct FormProperties {
  bool symmetric;
  ExactMatrix gram;  // gram[i][j] = t(b_i b_j)
  bool nondegenerate;
};
FormProperties form_properties(const HopfAlgebra& H, const Vec& t);

// True iff the comodulus equals g^2; also asserts the equivalent condition
// mu_g = mu_l_{g^{-1}} (with mu_l := mu o S) and throws on inconsistency.
bool is_unibalanced(const HopfAlgebra& H, const Vec& g);

struct PairingReport {
  ExactMatrix gram;  // (z, h) -> mu_g(z h), center basis vs HH0 representatives
  bool nondegenerate;
};
// Requires H unimodular with valid pivot g; asserts dim Z(H) = dim HH0(H).
PairingReport center_hh0_pairing(const HopfAlgebra& H, const Vec& g);

}  // namespace hopfkit
