#include "gramframe/matrix.hpp"

#include <cmath>
#include <string>

#include "gramframe/error.hpp"

namespace gramframe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SingularFunctionValue: return "SingularFunctionValue";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::NotPointwise: return "NotPointwise";
    case ErrorCode::OffGrid: return "OffGrid";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::RepresentationError: return "RepresentationError";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::BandMembershipError: return "BandMembershipError";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
  }
  return "Unknown";
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw Error(ErrorCode::ShapeError, "ragged rows: row " + std::to_string(i) + " has " +
                                             std::to_string(rows[i].size()) + " entries, expected " +
                                             std::to_string(m.cols_));
    }
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw Error(ErrorCode::ShapeError, "matrix product dimension mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Matrix operator-(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw Error(ErrorCode::ShapeError, "matrix difference dimension mismatch");
  Matrix out(lhs.rows(), lhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) out(i, j) = lhs(i, j) - rhs(i, j);
  return out;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::ShapeError, "matrix-vector length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector multiply_transposed(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw Error(ErrorCode::ShapeError, "transposed matrix-vector length mismatch");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeError, "dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

SymMatrix::SymMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::ShapeError, "symmetric matrix must be square with n >= 1, got " +
                                           std::to_string(entries_.rows()) + "x" +
                                           std::to_string(entries_.cols()));
  }
  const std::size_t n = entries_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (entries_(i, j) + entries_(j, i));
      entries_(i, j) = v;
      entries_(j, i) = v;
    }
  }
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::from_rows(const std::vector<Vector>& rows) { return SymMatrix(Matrix::from_rows(rows)); }

double SymMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
  return dot(x, apply(y));
}

}  // namespace gramframe
