#include "valvol/linalg.hpp"

#include "valvol/errors.hpp"

namespace valvol {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElem(1);
  return m;
}

Matrix Matrix::from_columns(std::span<const Vec> columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Matrix Matrix::from_rows(std::span<const Vec> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
  Matrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += a * b(k, j);
    }
  return c;
}

Vec Matrix::operator*(const Vec& x) const {
  if (cols_ != x.size()) throw DimensionError("matrix-vector dimension mismatch");
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (!(a.data_[k] == b.data_[k])) return false;
  return true;
}

namespace {

// Pivot heuristic: the nonzero entry with the fewest terms keeps fractions small.
std::size_t weight(const FieldElem& x) { return x.num().size() + x.den().size(); }

}  // namespace

FieldElem determinant(Matrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("determinant of a non-square matrix");
  if (n == 0) return FieldElem(1);
  FieldElem prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (!a(i, k).is_zero() && (best == n || weight(a(i, k)) < weight(a(best, k)))) best = i;
    if (best == n) return FieldElem(0);
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        FieldElem v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = prev == FieldElem(1) ? v : v / prev;
      }
      a(i, k) = FieldElem(0);
    }
    prev = a(k, k);
  }
  FieldElem d = a(n - 1, n - 1);
  return negate ? -d : d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionError("inverse of a non-square matrix");
  Matrix a = m, inv = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (!a(i, k).is_zero() && (best == n || weight(a(i, k)) < weight(a(best, k)))) best = i;
    if (best == n) return std::nullopt;
    if (best != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(best, j));
        std::swap(inv(k, j), inv(best, j));
      }
    FieldElem p = a(k, k).inv();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(k, j).is_zero()) a(k, j) = a(k, j) * p;
      if (!inv(k, j).is_zero()) inv(k, j) = inv(k, j) * p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      FieldElem f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t best = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (!a(i, c).is_zero() && (best == a.rows() || weight(a(i, c)) < weight(a(best, c)))) best = i;
    if (best == a.rows()) continue;
    if (best != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(best, j));
    FieldElem p = a(r, c).inv();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a(r, j).is_zero()) a(r, j) = a(r, j) * p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      FieldElem f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix a) { return rref(a).size(); }

std::vector<Vec> kernel(const Matrix& m) {
  Matrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(a.cols());
    x[free] = FieldElem(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

bool is_zero(const Vec& x) {
  for (const auto& e : x)
    if (!e.is_zero()) return false;
  return true;
}

Vec operator+(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionError("vector length mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

Vec operator-(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionError("vector length mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

Vec scale(const FieldElem& a, const Vec& x) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) z[i] = a * x[i];
  return z;
}

FieldElem dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionError("vector length mismatch");
  FieldElem s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  return s;
}

Value vtilde(const Vec& x) {
  Value m = Value::inf();
  for (const auto& e : x) m = vmin(m, e.val());
  return m;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec e(n);
  e.at(i) = FieldElem(1);
  return e;
}

}  // namespace valvol
