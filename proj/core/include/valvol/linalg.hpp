#pragma once

// Dense exact linear algebra over the coefficient field.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "valvol/field.hpp"

namespace valvol {

using Vec = std::vector<FieldElem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::span<const Vec> columns, std::size_t rows);
  static Matrix from_rows(std::span<const Vec> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;

  Matrix operator*(const Matrix& b) const;
  Vec operator*(const Vec& x) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> data_;
};

/// Fraction-free (Bareiss) determinant. Throws DimensionError if not square.
FieldElem determinant(Matrix a);

/// Inverse, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

/// Rank by Gaussian elimination.
std::size_t rank(Matrix a);

/// A basis of {x : a x = 0}.
std::vector<Vec> kernel(const Matrix& a);

/// Kronecker product, index (i*rows(b) + k, j*cols(b) + l).
Matrix kron(const Matrix& a, const Matrix& b);

bool is_zero(const Vec& x);
Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec scale(const FieldElem& a, const Vec& x);
FieldElem dot(const Vec& x, const Vec& y);

/// min_i v(x_i): the plain valuation of a coordinate vector.
Value vtilde(const Vec& x);

Vec unit_vector(std::size_t n, std::size_t i);

}  // namespace valvol
