// hopfkit: finite-dimensional Hopf algebras given by exact structure tensors.
//
// A HopfAlgebra stores, over an exact field F:
//   * a basis (distinct labels), the unit element,
//   * the multiplication tensor b_i * b_j (sparse),
//   * the coproduct  Delta(b_i) = sum c * b_j (x) b_k,
//   * the counit and the antipode,
//   * and optionally a pivot: a group-like g with S^2(x) = g x g^{-1}.
//
// Structure data may be stored eagerly (loaded from file) or provided by
// callbacks with memoization (generated algebras); semantics are identical.
// Elements are plain dense coefficient vectors (Vec); linear forms are
// dense coefficient vectors in the dual basis.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopfkit/matrix.hpp"

namespace hopfkit {

struct HopfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by operations that need a pivot when none is stored/supplied.
struct PivotMissingError : HopfError {
  using HopfError::HopfError;
};

struct CoprodTerm {
  uint32_t j, k;
  Scalar c;
};
using CoprodList = std::vector<CoprodTerm>;

// Check policy for verify_axioms.  Full triple/pair sweeps are used up to
// full_sweep_max_dim; above that, all generator-involving triples plus a
// seeded random sample are checked (and the report records the policy).
struct AxiomBudget {
  size_t full_sweep_max_dim = 64;
  size_t random_triples = 10000;
  uint64_t seed = 0;
};

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> failures;  // "axiom, witness ..." entries
  bool full_sweep = false;
  size_t triples_checked = 0;
  std::string policy;
  std::string text() const;
};

class HopfAlgebra {
 public:
  struct LazyOps {
    std::function<SparseVec(size_t, size_t)> mult;    // b_i * b_j
    std::function<CoprodList(size_t)> coprod;         // Delta(b_i)
    std::function<SparseVec(size_t)> antipode;        // S(b_i)
  };

  // Eager constructor: all tensors stored.
  HopfAlgebra(FieldSpec F, std::vector<std::string> labels, Vec unit,
              std::vector<std::vector<SparseVec>> mult,
              std::vector<CoprodList> coprod, Vec counit,
              std::vector<SparseVec> antipode_cols,
              std::optional<Vec> pivot = std::nullopt);

  // Lazy constructor: tensors computed on demand and memoized.
  HopfAlgebra(FieldSpec F, std::vector<std::string> labels, Vec unit,
              Vec counit, LazyOps ops, std::optional<Vec> pivot = std::nullopt,
              std::vector<size_t> generators = {});

  size_t dim() const { return n_; }
  const FieldSpec& field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }
  size_t label_index(const std::string& label) const;
  const Vec& unit() const { return unit_; }
  const Vec& counit_coeffs() const { return counit_; }
  const std::optional<Vec>& pivot() const { return pivot_; }
  // Indices of a generating set (plus the ones appearing in their products);
  // empty when unknown.
  const std::vector<size_t>& generators() const { return generators_; }

  // Structure tensors (memoized for lazy algebras).
  const SparseVec& mult(size_t i, size_t j) const;
  const CoprodList& coprod(size_t i) const;
  const SparseVec& antipode_col(size_t i) const;  // S(b_i)

  // Element arithmetic.
  Vec basis_elem(size_t i) const;
  Vec multiply(const Vec& x, const Vec& y) const;
  SparseVec multiply_sparse(const SparseVec& x, const SparseVec& y) const;
  // Delta(x) as an element of H (x) H (index j*n + k, kron convention).
  SparseVec coproduct(const Vec& x) const;
  SparseVec coproduct_sparse(const SparseVec& x) const;
  // Product of two elements of H (x) H (componentwise algebra structure).
  SparseVec tensor_multiply(const SparseVec& a, const SparseVec& b) const;
  Scalar counit(const Vec& x) const;
  Vec antipode(const Vec& x) const;
  SparseVec antipode_sparse(const SparseVec& x) const;
  Scalar eval_form(const Vec& form, const Vec& x) const;
  Vec pow(const Vec& x, unsigned long e) const;

  bool is_group_like(const Vec& x) const;
  // Inverse of a group-like element: g^{-1} = S(g).
  Vec group_like_inverse(const Vec& g) const;
  bool verify_pivot(const Vec& g, std::string* why = nullptr) const;
  // Stored pivot or throws PivotMissingError.
  const Vec& require_pivot() const;

  // Left/right multiplication operators on coordinates.
  SparseMatrix left_mult_matrix(const Vec& x) const;
  SparseMatrix right_mult_matrix(const Vec& x) const;
  ExactMatrix antipode_matrix() const;

  // Deterministic basis of the center {z : z b_i = b_i z for all i}.
  std::vector<Vec> center() const;

  // The opposite algebra H^op: mult[i][j] := mult[j][i]; coalgebra data
  // carried unchanged (H^op is used as an algebra only).
  HopfAlgebra opposite() const;

  // Parses an element expression: linear combinations of basis labels with
  // scalar coefficients, products resolved by in-algebra multiplication,
  // e.g. "K^3", "1/2*e + u", "(K + K^2)*F*E".
  Vec parse_element(const std::string& text) const;
  std::string element_str(const Vec& x) const;
  std::string form_str(const Vec& form) const;  // prints in dual-basis labels

 private:
  FieldSpec field_;
  size_t n_ = 0;
  std::vector<std::string> labels_;
  std::map<std::string, size_t> label_to_index_;
  Vec unit_;
  Vec counit_;
  std::optional<Vec> pivot_;
  std::vector<size_t> generators_;

  LazyOps ops_;  // empty functions for eager algebras
  struct Caches {
    std::mutex mutex;
    std::unordered_map<uint64_t, SparseVec> mult;
    std::vector<std::optional<CoprodList>> coprod;
    std::vector<std::optional<SparseVec>> antipode;
  };
  std::unique_ptr<Caches> caches_ = std::make_unique<Caches>();
};

// Verifies every Hopf axiom under the budget policy (see AxiomBudget).
AxiomReport verify_axioms(const HopfAlgebra& H, const AxiomBudget& budget = {});

// Normalizes a nonzero vector so its first nonzero coordinate is 1.
Vec normalize_first_nonzero(const Vec& v);

// ---------------------------------------------------------------------------
// Fixture builders.

// Group algebra of Z/m: basis 1, g, ..., g^{m-1}; S(g^i) = g^{-i}; pivot 1.
HopfAlgebra group_algebra_cyclic(const FieldSpec& F, unsigned m);

// Group algebra of the symmetric group S3 (basis labels e, s12, s13, s23,
// c123, c132); pivot 1.
HopfAlgebra group_algebra_s3(const FieldSpec& F);

// 4-dimensional Taft-type algebra: generators g, x with g^2 = 1, x^2 = 0,
// g x = -x g, Delta(g) = g(x)g, Delta(x) = 1(x)x + x(x)g; pivotal (pivot g)
// but not unimodular.  Field must not have characteristic 2.
HopfAlgebra taft4(const FieldSpec& F);

}  // namespace hopfkit
