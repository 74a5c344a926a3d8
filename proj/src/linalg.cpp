#include "metawhit/linalg.hpp"

#include <sstream>

#include "metawhit/errors.hpp"

namespace metawhit {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, CycloNum(field_)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<CycloNum> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows * cols || e_.empty()) throw DimensionMismatch("entry count does not match shape");
  field_ = e_.front().field_ptr();
  for (const auto& x : e_)
    if (x.field_ptr() != field_) throw IncompatibleModulus("matrix entries from different fields");
}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNum::one(field);
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

namespace {

void check_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ in product");
  if (a.field_ptr() != b.field_ptr()) throw IncompatibleModulus("matrices over different fields");
}

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("shapes differ");
  if (a.field_ptr() != b.field_ptr()) throw IncompatibleModulus("matrices over different fields");
}

CycloNum dot(const Matrix& a, const Matrix& b, std::size_t i, std::size_t j) {
  CycloNum acc(a.field_ptr());
  for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
  return acc;
}

}  // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  Matrix c(a.field_ptr(), a.rows(), b.cols());
  const long long total = static_cast<long long>(a.rows() * b.cols());
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < total; ++idx) {
    const auto i = static_cast<std::size_t>(idx) / b.cols(), j = static_cast<std::size_t>(idx) % b.cols();
    c(i, j) = dot(a, b, i, j);
  }
  return c;
}

Matrix mat_mul_serial(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  Matrix c(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = dot(a, b, i, j);
  return c;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  check_same_shape(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix scalar_mul(const CycloNum& s, const Matrix& a) {
  if (s.field_ptr() != a.field_ptr()) throw IncompatibleModulus("scalar from another field");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

Matrix identity(const FieldPtr& field, std::size_t n) { return Matrix::identity(field, n); }

Matrix transpose(const Matrix& a) {
  Matrix t(a.field_ptr(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

CycloNum trace(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("trace of a non-square matrix");
  CycloNum acc(a.field_ptr());
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

std::size_t rank(const Matrix& a) {
  // Division-free elimination: row_i <- p * row_i - m(i, col) * row_r. Nonzero
  // tests stay exact and no field inverse is ever needed.
  Matrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const CycloNum p = m(r, col);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const CycloNum factor = m(i, col);
      m(i, col) = CycloNum(m.field_ptr());
      for (std::size_t j = col + 1; j < m.cols(); ++j) m(i, j) = p * m(i, j) - factor * m(r, j);
    }
    ++r;
  }
  return r;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix m = a, inv = Matrix::identity(a.field_ptr(), n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).is_zero()) ++piv;
    if (piv == n) throw DivisionByZero("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    const CycloNum p = m(col, col).inv();
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col).is_zero()) continue;
      const CycloNum factor = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= factor * m(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

std::optional<CycloNum> is_scalar(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("scalar test on a non-square matrix");
  const CycloNum lambda = a(0, 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i == j ? !(a(i, j) == lambda) : !a(i, j).is_zero()) return std::nullopt;
    }
  return lambda;
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? "\n" : "") << "[";
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? "; " : "") << a(i, j).to_string();
    os << "]";
  }
  return os.str();
}

}  // namespace metawhit
