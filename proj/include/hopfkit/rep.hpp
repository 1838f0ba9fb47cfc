// Finite-dimensional left modules over a HopfAlgebra as exact action
// matrices: duals, tensor products, (co)evaluation maps, partial and
// categorical traces, intertwiner spaces, and the decomposition machinery
// for H (x) H (the twisted-factor isomorphisms, the summand system, and the
// three-parameter family spanning End(H (x) H)).
//
// Tensor index convention: a tensor module V (x) W is flattened row-major
// with the first factor major, matching ExactMatrix::kron.  Every map in
// this header is implemented against this single convention.

#pragma once

#include <memory>

#include "hopfkit/hopf.hpp"
#include "hopfkit/integrals.hpp"

namespace hopfkit {

struct RepError : HopfError {
  using HopfError::HopfError;
};

// A left H-module on k^m given by exact action matrices rho(b_i).  The
// action is verified to be an algebra map on construction (full pair sweep
// for dim(H) <= 64, generator pairs plus a seeded sample above).  Handles
// share an immutable payload, so copies are cheap and identity of the
// underlying module is observable.
class HModule {
 public:
  struct Impl;

  HModule() = default;
  HModule(const HopfAlgebra& H, std::vector<SparseMatrix> action,
          std::vector<HModule> factors = {}, bool verify = true);

  const HopfAlgebra& algebra() const;
  size_t dim() const;
  const SparseMatrix& rho(size_t i) const;  // action of basis element b_i
  SparseMatrix act(const Vec& x) const;     // action of an element of H
  Vec apply_elem(const Vec& x, const Vec& v) const;

  // Declared tensor factors (empty for atomic modules).
  const std::vector<HModule>& factors() const;
  // For a module built by dual_module, the module it is the dual of;
  // nullptr otherwise.
  const HModule* predual() const;
  bool same_module(const HModule& o) const;  // payload identity
  bool defined() const;

 private:
  explicit HModule(std::shared_ptr<const Impl> impl);

  friend HModule trivial_module(const HopfAlgebra&);
  friend HModule regular_module(const HopfAlgebra&);
  friend HModule trivialized_module(const HModule&);
  friend HModule direct_sum_power(const HModule&, size_t);
  friend HModule dual_module(const HModule&);
  friend HModule tensor_module(const HModule&, const HModule&);

  std::shared_ptr<const Impl> impl_;
};

// A linear map between modules over the same algebra; optionally verified
// to intertwine the actions on construction.
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(HModule src, HModule tgt, SparseMatrix mat,
            bool check_intertwiner = true);

  const HModule& source() const { return src_; }
  const HModule& target() const { return tgt_; }
  const SparseMatrix& matrix() const { return mat_; }
  Vec apply(const Vec& v) const { return mat_.apply(v); }
  bool is_intertwiner() const;
  ModuleMap compose(const ModuleMap& inner) const;  // this after inner
  ModuleMap operator+(const ModuleMap& o) const;
  ModuleMap scaled(const Scalar& c) const;

 private:
  HModule src_, tgt_;
  SparseMatrix mat_;
};

// Fixture modules.
HModule trivial_module(const HopfAlgebra& H);   // 1-dim via the counit
HModule regular_module(const HopfAlgebra& H);   // left multiplication
// The underlying space of V with the trivial action (every h acts by
// eps(h)); dim(V) copies of the trivial module.
HModule trivialized_module(const HModule& V);
// Direct sum of m copies of V (slot-major index: slot*dim(V) + i).
HModule direct_sum_power(const HModule& V, size_t m);

HModule dual_module(const HModule& V);          // (h f)(x) = f(S(h) x)
HModule tensor_module(const HModule& V, const HModule& W);

// The four (co)evaluation maps of a module plus the pivotal map
// delta_V : V -> V**.  ev(f (x) v) = f(v); coev(1) = sum v_j (x) v_j*;
// ev_r(v (x) f) = f(g v); coev_r(1) = sum v_j* (x) g^{-1} v_j.
struct DualityKit {
  HModule dual;
  ModuleMap ev;      // V* (x) V -> 1
  ModuleMap coev;    // 1 -> V (x) V*
  ModuleMap ev_r;    // V (x) V* -> 1
  ModuleMap coev_r;  // 1 -> V* (x) V
  ModuleMap delta;   // V -> V**
};
DualityKit duality_kit(const HModule& V);  // throws PivotMissingError

// Partial traces of an endomorphism of a declared two-factor tensor module
// W (x) V: Side::Right closes the second factor (an endomorphism of W),
// Side::Left closes the first (an endomorphism of V).  The result is
// asserted to be an intertwiner.
enum class TraceSide { Left, Right };
ModuleMap partial_trace(const ModuleMap& f, TraceSide side);

// Full closure: Right = trace(rho(g) f), Left = trace(f rho(g^{-1})).
Scalar categorical_trace(const ModuleMap& f, TraceSide side);

// Deterministic basis of {T : T rho_V(b) = rho_W(b) T for all b}.
std::vector<ModuleMap> intertwiner_space(const HModule& V, const HModule& W);

// The mutually inverse twisted-factor isomorphisms.  Side::Right is the
// pair phi : H (x) eW -> H (x) W, h (x) m -> h' (x) h''m, with inverse
// psi(x (x) y) = x' (x) S(x'')y.  Side::Left is the pair
// phi_l : eW (x) H -> W (x) H, m (x) h -> h'm (x) h'', with inverse
// psi_l(x (x) y) = S^{-1}(y')x (x) y''.  (eW denotes the trivialized W.)
std::pair<ModuleMap, ModuleMap> phi_psi(const HopfAlgebra& H,
                                        const HModule& W,
                                        Side side = Side::Right);

// The regular-module decomposition of H (x) H: for every basis element y,
// iota_y : H -> H (x) H, h -> h' (x) h''y  and  pi_y : H (x) H -> H with
// pi_y iota_y = id and e_y = iota_y pi_y a complete orthogonal idempotent
// family summing to the identity (all verified exactly on construction).
struct SummandSystem {
  HModule regular;        // H as a module over itself
  HModule square;         // H (x) H
  std::vector<ModuleMap> iota, pi;
  std::vector<SparseMatrix> e;
};
SummandSystem summand_system(const HopfAlgebra& H);

// The endomorphism f(h,v,gamma) = phi o [x (x) y -> gamma(y) (xh) (x) v]
// o psi of H (x) H; gamma is a linear form in dual-basis coordinates.
ModuleMap endo_triple(const HopfAlgebra& H, const Vec& h, const Vec& v,
                      const Vec& gamma, bool check_intertwiner = true);

// Dimension of span{f(h,v,gamma)} over basis triples.  The span is the
// conjugate by the invertible phi of {R_h (x) E_{v,gamma}}, so its
// dimension is rank{R_h : h in B} * n^2, with the first factor computed
// by exact elimination on the flattened right-multiplication matrices.
size_t endo_span_dimension(const HopfAlgebra& H);

// The duality isomorphisms on Hom spaces between declared tensor modules.
//   DCap  : Hom(W, U(x)V)  ~ Hom(W(x)V*, U),  f -> (id_U (x) ev_r)(f (x) id)
//   DCup  : Hom(U(x)V, W)  ~ Hom(U, W(x)V*),  f -> (f (x) id)(id_U (x) coev)
//   CupD  : Hom(W, U(x)V)  ~ Hom(U*(x)W, V),  f -> (ev (x) id_V)(id (x) f)
//   CapD  : Hom(U(x)V, W)  ~ Hom(V, U*(x)W),  f -> (id (x) f)(coev_r (x) id)
// With inverse = true the inverse formula is applied (the caller passes the
// transformed map and recovers the original).
enum class DualityIso { DCap, DCup, CupD, CapD };
ModuleMap duality_iso(const ModuleMap& f, DualityIso which,
                      bool inverse = false);

}  // namespace hopfkit
