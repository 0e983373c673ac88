#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gramframe {

using Vector = std::vector<double>;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Throws ShapeError on ragged input.
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator-(const Matrix& lhs, const Matrix& rhs);

/// y = A x. Throws ShapeError on length mismatch.
Vector multiply(const Matrix& a, std::span<const double> x);
/// y = Aᵀ x.
Vector multiply_transposed(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// Real symmetric matrix, n >= 1. Construction symmetrizes the input as
/// (A + Aᵀ)/2, so entries[i][j] == entries[j][i] holds bitwise afterwards.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix entries);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);
  static SymMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t size() const noexcept { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Matrix& matrix() const noexcept { return entries_; }

  Vector apply(std::span<const double> x) const { return multiply(entries_, x); }
  /// xᵀ A y
  double bilinear(std::span<const double> x, std::span<const double> y) const;

 private:
  Matrix entries_;
};

}  // namespace gramframe
