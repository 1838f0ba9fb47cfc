#pragma once
// Explicit catalog for the restricted quantum group of sl2 at a primitive
// 2p-th root of unity: closed-form central elements w_s^+/w_s^-/e_0/e_p with
// their scalars zeta_s, computed block idempotents e_s, Cartan projectors
// pi_n, the primitive idempotents I_{n,s} = pi_n e_s, the values of the
// symmetrised right integral mu_g on all of them, and the modified-trace
// table on the Hochschild-degree-zero basis {[id_{P_s^pm}], [x_s^+]}.
//
// Everything is verified exactly at construction: centrality of each closed
// form, completeness/orthogonality of the idempotent families, and the
// closed-form value predictions for mu_g.

#include <string>
#include <vector>

#include "hopfkit/integrals.hpp"
#include "hopfkit/modtrace.hpp"
#include "hopfkit/qgroup.hpp"

namespace hopfkit {

// Eta normalization of the trace table: Unit rescales mu_g so eta = 1;
// Zeta0Inv uses eta = 1/zeta_0, which makes the table entries the classical
// normalized values (-1)^{p-1}, 1, (-1)^s [s]^2, (-1)^s (q^s + q^{-s}).
enum class EtaChoice { Unit, Zeta0Inv };

struct Sl2Cell {
  std::string label;  // "id(Ps+)", "id(Ps-)" for 1<=s<=p, "x(s+)" for s<p
  size_t block_dim;   // dimension of the regular-module summand cut by I
  Scalar value;
};

class Sl2Catalog {
 public:
  explicit Sl2Catalog(unsigned p);

  unsigned p() const { return p_; }
  const UqAlgebra& uq() const { return uq_; }
  const HopfAlgebra& algebra() const { return uq_.hopf(); }

  // Central elements.  w_plus/w_minus: 1 <= s <= p-1; e: 0 <= s <= p with
  // e(0), e(p) from the closed forms and e(s) computed from the central
  // primitive idempotent decomposition; zeta: 0 <= s <= p.
  const Vec& w_plus(unsigned s) const;
  const Vec& w_minus(unsigned s) const;
  const Vec& e(unsigned s) const;
  const Scalar& zeta(unsigned s) const;

  // The squares (w_s^pm)^2, recorded as computed (not asserted zero).
  const Vec& w_plus_square(unsigned s) const;
  const Vec& w_minus_square(unsigned s) const;

  // Cartan projector pi_n = (1/2p) sum_j q^{-nj} K^j, 0 <= n < 2p.
  const Vec& pi(unsigned n) const;
  // I_{n,s} = pi_n e_s; requires n - s odd (throws TraceError otherwise).
  Vec block_idempotent(unsigned n, unsigned s) const;

  const Vec& pivot() const { return g_; }       // K^{p+1}
  const Vec& mu_g() const { return mu_g_; }     // dual-basis coordinates
  const Scalar& eta() const { return eta_; }    // mu_g(F^{p-1} E^{p-1})
  Scalar mu(const Vec& x) const;                // evaluate mu_g

  // mu_g on the central basis, each value verified against its closed-form
  // prediction (s*eta*zeta_s and friends).  Labels: "w(s+)", "w(s-)", "e(s)".
  struct IntegralValue {
    std::string label;
    Scalar value;
  };
  std::vector<IntegralValue> sym_integral_values() const;

  // The modified-trace table.  Row order: id(P1+), id(P1-), ..., id(Pp+),
  // id(Pp-), x(1+), ..., x(p-1 +).  Cells are computed as mu_g(I * z) with
  // the block convention I_{s-1,s} <-> P_s^+ and I_{-s-1,s} <-> P_s^-
  // (P_p^+ <-> e_p, P_p^- <-> e_0).
  std::vector<Sl2Cell> trace_table(EtaChoice eta = EtaChoice::Zeta0Inv) const;
  static std::string trace_table_text(const std::vector<Sl2Cell>& cells);

  // Convenience: F^a E^b K^j as an element.
  Vec monomial(unsigned a, unsigned b, unsigned j) const;

 private:
  unsigned p_;
  UqAlgebra uq_;
  FieldSpec F_;
  Vec E_, F_elem_, K_;
  Vec g_;
  Vec mu_g_;
  Scalar eta_;
  std::vector<Scalar> zeta_;       // 0..p
  std::vector<Vec> wp_, wm_;       // index s-1
  std::vector<Vec> wp_sq_, wm_sq_;
  std::vector<Vec> e_;             // 0..p
  std::vector<Vec> pi_;            // 0..2p-1

  void check_central(const Vec& z, const std::string& what) const;
};

}  // namespace hopfkit
