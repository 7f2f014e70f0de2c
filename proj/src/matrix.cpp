#include "sepalg/matrix.hpp"

#include <algorithm>

namespace sepalg {

Matrix::Matrix(const FieldRef& f, size_t rows, size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const FieldRef& f, size_t n) {
  Matrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const FieldRef& f, std::vector<Vec> rows) {
  size_t r = rows.size();
  size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(f, r, c);
  for (size_t i = 0; i < r; ++i) {
    check_internal(rows[i].size() == c, "ragged rows");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = std::move(rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_usage(cols_ == o.rows_, "matrix product dimension mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) += a * b;
      }
    }
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  check_usage(v.size() == cols_, "matrix-vector dimension mismatch");
  Vec r(rows_, Scalar::zero(field_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_usage(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_usage(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

size_t Matrix::rank() const { return echelon().rank; }

Scalar Matrix::trace() const {
  check_usage(rows_ == cols_, "trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Echelon Matrix::echelon() const {
  Echelon e{*this, {}, 0};
  Matrix& m = e.rref;
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t piv = row;
    while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != row)
      for (size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Scalar inv = m.at(row, col).inverse();
    for (size_t j = col; j < cols_; ++j) m.at(row, j) *= inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

std::optional<Matrix> Matrix::inverse() const {
  check_usage(rows_ == cols_, "inverse of a non-square matrix");
  Matrix aug(field_, rows_, 2 * cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(field_);
  }
  Echelon e = aug.echelon();
  if (e.rank < rows_ || e.pivot_cols[rows_ - 1] >= cols_) return std::nullopt;
  Matrix inv(field_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = e.rref.at(i, cols_ + j);
  return inv;
}

Scalar Matrix::determinant() const {
  check_usage(rows_ == cols_, "determinant of a non-square matrix");
  Matrix m = *this;
  Scalar det = Scalar::one(field_);
  for (size_t col = 0; col < cols_; ++col) {
    size_t piv = col;
    while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows_) return Scalar::zero(field_);
    if (piv != col) {
      for (size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Scalar inv = m.at(col, col).inverse();
    for (size_t i = col + 1; i < rows_; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col) * inv;
      for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return det;
}

std::vector<Vec> Matrix::kernel_basis() const {
  Echelon e = echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(cols_, Scalar::zero(field_));
    v[free_col] = Scalar::one(field_);
    for (size_t r = 0; r < e.rank; ++r) v[e.pivot_cols[r]] = -e.rref.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LinearSolution> solve_linear(const Matrix& m, const Vec& b) {
  check_usage(b.size() == m.rows(), "solve dimension mismatch");
  const FieldRef& f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  Echelon e = aug.echelon();
  for (size_t r = 0; r < e.rank; ++r)
    if (e.pivot_cols[r] == m.cols()) return std::nullopt;  // 0 = 1 row
  Vec x(m.cols(), Scalar::zero(f));
  for (size_t r = 0; r < e.rank; ++r) x[e.pivot_cols[r]] = e.rref.at(r, m.cols());
  LinearSolution sol{std::move(x), m.kernel_basis()};
  return sol;
}

Vec vec_zero(const FieldRef& f, size_t n) { return Vec(n, Scalar::zero(f)); }

Vec vec_add(const Vec& a, const Vec& b) {
  check_internal(a.size() == b.size(), "vector size mismatch");
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  check_internal(a.size() == b.size(), "vector size mismatch");
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
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); });
}

SpanBasis::SpanBasis(const FieldRef& f, std::vector<Vec> basis) : field_(f), basis_(std::move(basis)) {
  size_t width = basis_.empty() ? 0 : basis_[0].size();
  RowSpan span(f, width);
  for (const Vec& v : basis_) check_internal(span.insert(v), "SpanBasis vectors are dependent");
  echelon_rows_ = span.basis();
  pivots_ = span.pivots();
  size_t m = basis_.size();
  Matrix to_span(f, m, m);
  for (size_t c = 0; c < m; ++c) {
    auto coords = span.coordinates(basis_[c]);
    check_internal(coords.has_value(), "SpanBasis coordinates missing");
    for (size_t r = 0; r < m; ++r) to_span.at(r, c) = (*coords)[r];
  }
  auto inv = to_span.inverse();
  check_internal(inv.has_value(), "SpanBasis change of basis is singular");
  echelon_to_basis_ = std::move(*inv);
}

std::optional<Vec> SpanBasis::coordinates(const Vec& v) const {
  if (basis_.empty()) return vec_is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  RowSpan tmp(field_, v.size());
  // Reduce against the stored echelon rows directly.
  Vec rem = v;
  Vec coords(basis_.size(), Scalar::zero(field_));
  for (size_t r = 0; r < echelon_rows_.size(); ++r) {
    const Scalar& c = rem[pivots_[r]];
    if (c.is_zero()) continue;
    coords[r] = c;
    for (size_t j = 0; j < rem.size(); ++j) rem[j] -= c * echelon_rows_[r][j];
  }
  if (!vec_is_zero(rem)) return std::nullopt;
  return echelon_to_basis_.apply(coords);
}

Vec RowSpan::reduce(Vec v) const {
  check_internal(v.size() == width_, "RowSpan width mismatch");
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    Scalar f = c;  // rows are normalized to pivot 1
    for (size_t j = 0; j < width_; ++j) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool RowSpan::insert(Vec v) {
  v = reduce(std::move(v));
  size_t piv = 0;
  while (piv < width_ && v[piv].is_zero()) ++piv;
  if (piv == width_) return false;
  Scalar inv = v[piv].inverse();
  for (auto& x : v) x *= inv;
  // Back-substitute into existing rows to stay fully reduced.
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = rows_[r][piv];
    if (c.is_zero()) continue;
    Scalar f = c;
    for (size_t j = 0; j < width_; ++j) rows_[r][j] -= f * v[j];
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

std::optional<Vec> RowSpan::coordinates(const Vec& v) const {
  check_internal(v.size() == width_, "RowSpan width mismatch");
  Vec coords(rows_.size(), Scalar::zero(field_));
  Vec rem = v;
  for (size_t r = 0; r < rows_.size(); ++r) {
    coords[r] = rem[pivots_[r]];
    if (coords[r].is_zero()) continue;
    for (size_t j = 0; j < width_; ++j) rem[j] -= coords[r] * rows_[r][j];
  }
  if (!vec_is_zero(rem)) return std::nullopt;
  return coords;
}

}  // namespace sepalg
