#pragma once

#include <optional>
#include <vector>

#include "sepalg/field.hpp"

namespace sepalg {

using Vec = std::vector<Scalar>;

class Matrix;

// Row echelon data: rank, pivot columns, and the reduced form.
struct Echelon;

// Dense row-major matrix of exact scalars over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldRef& f, size_t rows, size_t cols);
  static Matrix identity(const FieldRef& f, size_t n);
  static Matrix from_rows(const FieldRef& f, std::vector<Vec> rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldRef& field() const { return field_; }

  Scalar& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;

  Scalar trace() const;

  Echelon echelon() const;

  size_t rank() const;
  std::optional<Matrix> inverse() const;
  Scalar determinant() const;

  std::vector<Vec> kernel_basis() const;

 private:
  FieldRef field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

struct Echelon {
  Matrix rref;
  std::vector<size_t> pivot_cols;
  size_t rank = 0;
};

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

// Exact solve of m x = b; returns a particular solution plus a kernel basis,
// or nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const Matrix& m, const Vec& b);

// Span utilities on coordinate vectors over one field.
Vec vec_zero(const FieldRef& f, size_t n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& a);
bool vec_is_zero(const Vec& a);

// A fixed independent spanning list with coordinate queries in that list.
class SpanBasis {
 public:
  SpanBasis(const FieldRef& f, std::vector<Vec> basis);
  const std::vector<Vec>& basis() const { return basis_; }
  size_t dim() const { return basis_.size(); }
  // Coordinates of v in the stored basis; nullopt if outside the span.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  FieldRef field_;
  std::vector<Vec> basis_;
  std::vector<Vec> echelon_rows_;
  std::vector<size_t> pivots_;
  Matrix echelon_to_basis_;
};

// Maintains a row space in reduced echelon form for incremental spanning.
class RowSpan {
 public:
  explicit RowSpan(const FieldRef& f, size_t width) : field_(f), width_(width) {}

  // Reduces v against the span; returns the residue (zero iff v in span).
  Vec reduce(Vec v) const;
  // Returns true if v enlarged the span.
  bool insert(Vec v);
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
  size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  // Coordinates of v in the stored echelon basis (nullopt if v not in span).
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  FieldRef field_;
  size_t width_;
  std::vector<Vec> rows_;         // reduced echelon rows
  std::vector<size_t> pivots_;    // pivot column per row
};

}  // namespace sepalg
