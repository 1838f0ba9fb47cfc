#include "hopfkit/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfkit {

Vec vec_zero(const FieldSpec& F, size_t n) {
  return Vec(n, Scalar::zero(F));
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw FieldError("vector size mismatch");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw FieldError("vector size mismatch");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (auto& x : r) x *= c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

Scalar vec_dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty())
    throw FieldError("vector size mismatch in dot product");
  Scalar s = Scalar::zero(a[0].field());
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ExactMatrix::ExactMatrix(const FieldSpec& F, size_t rows, size_t cols)
    : field_(F), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(F)) {}

ExactMatrix ExactMatrix::identity(const FieldSpec& F, size_t n) {
  ExactMatrix m(F, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(F);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const FieldSpec& F,
                                   const std::vector<Vec>& rows) {
  size_t rc = rows.size(), cc = rc ? rows[0].size() : 0;
  ExactMatrix m(F, rc, cc);
  for (size_t i = 0; i < rc; ++i) {
    if (rows[i].size() != cc) throw FieldError("ragged rows");
    for (size_t j = 0; j < cc; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

ExactMatrix ExactMatrix::from_cols(const FieldSpec& F,
                                   const std::vector<Vec>& cols) {
  size_t cc = cols.size(), rc = cc ? cols[0].size() : 0;
  ExactMatrix m(F, rc, cc);
  for (size_t j = 0; j < cc; ++j) {
    if (cols[j].size() != rc) throw FieldError("ragged columns");
    for (size_t i = 0; i < rc; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ &&
         a_ == o.a_;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw FieldError("matrix shape mismatch in +");
  ExactMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw FieldError("matrix shape mismatch in -");
  ExactMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw FieldError("matrix shape mismatch in *");
  ExactMatrix r(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const Scalar& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

ExactMatrix ExactMatrix::scaled(const Scalar& c) const {
  ExactMatrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Vec ExactMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw FieldError("matrix/vector size mismatch");
  Vec r = vec_zero(field_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const Scalar& aij = at(i, j);
      if (!aij.is_zero() && !v[j].is_zero()) r[i] += aij * v[j];
    }
  return r;
}

Scalar ExactMatrix::trace() const {
  if (rows_ != cols_) throw FieldError("trace of non-square matrix");
  Scalar s = Scalar::zero(field_);
  for (size_t i = 0; i < rows_; ++i) s += at(i, i);
  return s;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& o) const {
  ExactMatrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const Scalar& aij = at(i, j);
      if (aij.is_zero()) continue;
      for (size_t k = 0; k < o.rows_; ++k)
        for (size_t l = 0; l < o.cols_; ++l) {
          const Scalar& bkl = o.at(k, l);
          if (bkl.is_zero()) continue;
          r.at(i * o.rows_ + k, j * o.cols_ + l) = aij * bkl;
        }
    }
  return r;
}

std::vector<size_t> ExactMatrix::rref() {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t sel = rows_;
    for (size_t i = row; i < rows_; ++i)
      if (!at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows_) continue;
    if (sel != row)
      for (size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
    Scalar inv = at(row, col).inverse();
    for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      Scalar f = at(i, col);
      if (f.is_zero()) continue;
      for (size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t ExactMatrix::rank() const {
  ExactMatrix m = *this;
  return m.rref().size();
}

std::vector<Vec> ExactMatrix::nullspace() const {
  ExactMatrix m = *this;
  std::vector<size_t> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    Vec v = vec_zero(field_, cols_);
    v[f] = Scalar::one(field_);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> ExactMatrix::solve(const Vec& b) const {
  if (b.size() != rows_) throw FieldError("solve: rhs size mismatch");
  ExactMatrix aug(field_, rows_, cols_ + 1);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<size_t> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Vec x = vec_zero(field_, cols_);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
  return x;
}

ExactMatrix ExactMatrix::inverse() const {
  if (rows_ != cols_) throw FieldError("inverse of non-square matrix");
  ExactMatrix aug(field_, rows_, 2 * cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(field_);
  }
  std::vector<size_t> pivots = aug.rref();
  if (pivots.size() != rows_) throw FieldError("matrix is singular");
  for (size_t r = 0; r < rows_; ++r)
    if (pivots[r] != r) throw FieldError("matrix is singular");
  ExactMatrix inv(field_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Sparse

SparseVec sparse_normalize(SparseVec v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second.is_zero(); }),
            out.end());
  return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      Scalar s = a[i].second + b[j].second;
      if (!s.is_zero()) r.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_scale(const Scalar& c, const SparseVec& a) {
  if (c.is_zero()) return {};
  SparseVec r = a;
  for (auto& e : r) e.second *= c;
  return r;
}

Vec sparse_to_dense(const FieldSpec& F, size_t n, const SparseVec& v) {
  Vec r = vec_zero(F, n);
  for (const auto& e : v) r[e.first] = e.second;
  return r;
}

SparseVec dense_to_sparse(const Vec& v) {
  SparseVec r;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

SparseMatrix::SparseMatrix(const FieldSpec& F, size_t rows, size_t cols)
    : field_(F), rows_(rows), cols_(cols), rows_data_(rows) {}

SparseMatrix SparseMatrix::identity(const FieldSpec& F, size_t n) {
  SparseMatrix m(F, n, n);
  for (size_t i = 0; i < n; ++i)
    m.rows_data_[i].emplace_back(i, Scalar::one(F));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const ExactMatrix& m) {
  SparseMatrix r(m.field(), m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) r.rows_data_[i].emplace_back(j, m.at(i, j));
  return r;
}

void SparseMatrix::add_entry(size_t i, size_t j, const Scalar& v) {
  if (v.is_zero()) return;
  rows_data_[i].emplace_back(j, v);
}

void SparseMatrix::finalize() {
  for (auto& row : rows_data_) row = sparse_normalize(std::move(row));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw FieldError("sparse shape mismatch in *");
  SparseMatrix r(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    SparseVec acc;
    for (const auto& [k, aik] : rows_data_[i])
      acc = sparse_add(acc, sparse_scale(aik, o.rows_data_[k]));
    r.rows_data_[i] = std::move(acc);
  }
  return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw FieldError("sparse shape mismatch in +");
  SparseMatrix r(field_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    r.rows_data_[i] = sparse_add(rows_data_[i], o.rows_data_[i]);
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  return *this + o.scaled(-Scalar::one(field_));
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  SparseMatrix r(field_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    r.rows_data_[i] = sparse_scale(c, rows_data_[i]);
  return r;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix r(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i])
      r.rows_data_[j].emplace_back(i, v);
  r.finalize();
  return r;
}

SparseMatrix SparseMatrix::kron(const SparseMatrix& o) const {
  SparseMatrix r(field_, rows_ * o.rows_, cols_ * o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < o.rows_; ++k) {
      SparseVec& dst = r.rows_data_[i * o.rows_ + k];
      for (const auto& [j, a] : rows_data_[i])
        for (const auto& [l, b] : o.rows_data_[k])
          dst.emplace_back(j * o.cols_ + l, a * b);
      dst = sparse_normalize(std::move(dst));
    }
  return r;
}

Vec SparseMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw FieldError("sparse matrix/vector mismatch");
  Vec r = vec_zero(field_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, a] : rows_data_[i])
      if (!v[j].is_zero()) r[i] += a * v[j];
  return r;
}

SparseVec SparseMatrix::apply_sparse(const SparseVec& v) const {
  // (row i of result) = sum_j A[i][j] v[j]; iterate column-wise via v.
  SparseVec acc;
  for (size_t i = 0; i < rows_; ++i) {
    Scalar s = Scalar::zero(field_);
    const SparseVec& row = rows_data_[i];
    size_t a = 0, b = 0;
    while (a < row.size() && b < v.size()) {
      if (row[a].first < v[b].first)
        ++a;
      else if (v[b].first < row[a].first)
        ++b;
      else {
        s += row[a].second * v[b].second;
        ++a;
        ++b;
      }
    }
    if (!s.is_zero()) acc.emplace_back(i, s);
  }
  return acc;
}

Scalar SparseMatrix::trace() const {
  if (rows_ != cols_) throw FieldError("trace of non-square sparse matrix");
  Scalar s = Scalar::zero(field_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i])
      if (j == i) s += v;
  return s;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < rows_; ++i) {
    SparseVec a = sparse_normalize(rows_data_[i]);
    SparseVec b = sparse_normalize(o.rows_data_[i]);
    if (a != b) return false;
  }
  return true;
}

bool SparseMatrix::is_zero() const {
  for (const auto& row : rows_data_)
    for (const auto& e : row)
      if (!e.second.is_zero()) return false;
  return true;
}

size_t SparseMatrix::nnz() const {
  size_t n = 0;
  for (const auto& row : rows_data_) n += row.size();
  return n;
}

ExactMatrix SparseMatrix::to_dense() const {
  ExactMatrix m(field_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i]) m.at(i, j) += v;
  return m;
}

}  // namespace hopfkit
