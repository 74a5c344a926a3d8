#pragma once

// Dense matrices over Q(zeta_N).

#include <optional>
#include <string>
#include <vector>

#include "metawhit/cyclo.hpp"

namespace metawhit {

class Matrix {
 public:
  /// rows x cols zero matrix.
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<CycloNum> entries);

  static Matrix identity(const FieldPtr& field, std::size_t n);

  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const CycloNum& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  CycloNum& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const std::vector<CycloNum>& entries() const noexcept { return e_; }

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<CycloNum> e_;
};

/// Product, entries computed in parallel.
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// Single-threaded reference product.
Matrix mat_mul_serial(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix scalar_mul(const CycloNum& c, const Matrix& a);
Matrix identity(const FieldPtr& field, std::size_t n);
Matrix transpose(const Matrix& a);

CycloNum trace(const Matrix& a);
/// Exact rank by Gaussian elimination.
std::size_t rank(const Matrix& a);
/// Inverse by Gauss-Jordan elimination; throws DivisionByZero if singular.
Matrix inverse(const Matrix& a);
/// lambda with a = lambda I, if any.
std::optional<CycloNum> is_scalar(const Matrix& a);

std::string to_string(const Matrix& a);

}  // namespace metawhit
