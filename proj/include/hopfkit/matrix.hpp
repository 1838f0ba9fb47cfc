// hopfkit: exact dense and sparse matrices over a FieldSpec.
//
// The dense ExactMatrix provides the deterministic elimination kernel used
// by every solver in the library:
//
//   * rref()      -- reduced row echelon form, pivots chosen as the first
//                    row with a nonzero entry scanning columns left to
//                    right (no pivoting heuristics, fully deterministic).
//   * nullspace() -- basis of the right kernel; one vector per free column
//                    in ascending column order, with the free coordinate
//                    set to 1.
//
// SparseMatrix is a row-major sparse companion used for module actions and
// large structural maps; it converts to ExactMatrix for elimination.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hopfkit/field.hpp"

namespace hopfkit {

using Vec = std::vector<Scalar>;

Vec vec_zero(const FieldSpec& F, size_t n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);
Scalar vec_dot(const Vec& a, const Vec& b);

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(const FieldSpec& F, size_t rows, size_t cols);
  static ExactMatrix identity(const FieldSpec& F, size_t n);
  static ExactMatrix from_rows(const FieldSpec& F,
                               const std::vector<Vec>& rows);
  static ExactMatrix from_cols(const FieldSpec& F,
                               const std::vector<Vec>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix scaled(const Scalar& c) const;
  ExactMatrix transpose() const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  Scalar trace() const;
  bool is_zero() const;

  // Kronecker product with row-major index convention:
  // (A (x) B)[iA*rowsB + iB][jA*colsB + jB] = A[iA][jA] * B[iB][jB].
  ExactMatrix kron(const ExactMatrix& o) const;

  // In-place reduced row echelon form; returns the pivot columns in
  // ascending order.
  std::vector<size_t> rref();
  size_t rank() const;

  // Deterministic right-kernel basis (see header comment).
  std::vector<Vec> nullspace() const;

  // Solves A x = b; returns std::nullopt when inconsistent.  When the
  // system is underdetermined the solution with all free variables set to
  // zero is returned (deterministic).
  std::optional<Vec> solve(const Vec& b) const;

  // Inverse of a square invertible matrix; throws on singular input.
  ExactMatrix inverse() const;

 private:
  FieldSpec field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Sorted sparse vector: list of (index, nonzero scalar) pairs.
using SparseVec = std::vector<std::pair<uint64_t, Scalar>>;

SparseVec sparse_normalize(SparseVec v);  // sort, merge, drop zeros
SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const Scalar& c, const SparseVec& a);
Vec sparse_to_dense(const FieldSpec& F, size_t n, const SparseVec& v);
SparseVec dense_to_sparse(const Vec& v);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(const FieldSpec& F, size_t rows, size_t cols);
  static SparseMatrix identity(const FieldSpec& F, size_t n);
  static SparseMatrix from_dense(const ExactMatrix& m);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  void add_entry(size_t i, size_t j, const Scalar& v);  // accumulates
  void finalize();  // sort/merge rows, drop zeros
  const SparseVec& row(size_t i) const { return rows_data_[i]; }

  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& c) const;
  SparseMatrix transpose() const;
  SparseMatrix kron(const SparseMatrix& o) const;  // same convention as dense
  Vec apply(const Vec& v) const;
  SparseVec apply_sparse(const SparseVec& v) const;
  Scalar trace() const;
  bool operator==(const SparseMatrix& o) const;
  bool is_zero() const;
  size_t nnz() const;

  ExactMatrix to_dense() const;

 private:
  FieldSpec field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> rows_data_;
};

}  // namespace hopfkit
