#pragma once

// Valued vector spaces over K: min-of-forms and diagonal presentations,
// exact orthogonalization, quotient values, adapted bases, tensor products
// and volumes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "valvol/errors.hpp"
#include "valvol/field.hpp"
#include "valvol/linalg.hpp"

namespace valvol {

/// Raised when a valuation that must be reduced has a nonzero kernel.
class NonReducedError : public DomainError {
 public:
  NonReducedError(const std::string& what, Vec witness)
      : DomainError(what), witness_(std::move(witness)) {}
  const Vec& witness() const { return witness_; }

 private:
  Vec witness_;
};

/// u(x) = min_j ( v(lambda_j . x) + c_j ).
struct MinFormsVal {
  std::size_t dim = 0;
  std::vector<Vec> forms;
  std::vector<Value> shifts;
  FieldCtx ctx = FieldCtx::gauss();

  MinFormsVal() = default;
  MinFormsVal(std::size_t dim, std::vector<Vec> forms, std::vector<Value> shifts,
              FieldCtx ctx = FieldCtx::gauss());

  Value eval(const Vec& x) const;
};

/// u(sum a_i b_i) = min_i ( v(a_i) + c_i ) for the columns b_i of an
/// invertible basis matrix. An INF shift puts b_i in the kernel.
class DiagonalVal {
 public:
  DiagonalVal() = default;
  /// Throws DomainError if the basis is singular.
  DiagonalVal(Matrix basis, std::vector<Value> shifts, FieldCtx ctx = FieldCtx::gauss());

  /// The plain valuation: standard basis, all shifts zero.
  static DiagonalVal plain(std::size_t m, FieldCtx ctx = FieldCtx::gauss());
  /// Standard basis with the given shifts.
  static DiagonalVal standard(std::vector<Value> shifts, FieldCtx ctx = FieldCtx::gauss());

  std::size_t dim() const { return shifts_.size(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<Value>& shifts() const { return shifts_; }
  const FieldCtx& ctx() const { return ctx_; }
  Vec basis_vector(std::size_t i) const { return basis_.column(i); }

  /// Coordinates of x in the diagonal basis.
  Vec coords(const Vec& x) const;
  Value eval(const Vec& x) const;
  bool reduced() const;
  /// The same valuation written as forms (rows of the inverse basis).
  MinFormsVal as_forms() const;
  /// v(det basis), cached.
  const Value& basis_det_val() const { return det_val_; }

 private:
  Matrix basis_, inverse_;
  std::vector<Value> shifts_;
  Value det_val_;
  bool identity_ = false;
  FieldCtx ctx_ = FieldCtx::gauss();
};

Value eval_val(const MinFormsVal& u, const Vec& x);
Value eval_val(const DiagonalVal& u, const Vec& x);

struct Orthogonalization {
  DiagonalVal diag;
  /// Columns are the diagonal basis written in the input coordinates;
  /// determinant 1.
  Matrix transition;
  /// Certified bound on |u(x) - diag(x)|; the elimination is exact, so 0.
  Rational slack = 0;
};

/// Diagonal presentation of a reduced min-of-forms valuation. Throws
/// NonReducedError (witness: a nonzero kernel vector) otherwise.
/// `eps` is accepted for interface compatibility; the result is exact.
Orthogonalization orthogonalize(const MinFormsVal& u, const Rational& eps = 0);

/// (u/F)(x) = sup_{y in x + F} u(y), exact. INF iff x is in span(F).
/// Throws DomainError if F is dependent.
Value quotient_value(const DiagonalVal& u, std::span<const Vec> F, const Vec& x,
                     const Rational& eps = 0);

struct AdaptedBasis {
  /// u restricted to span(F), in coordinates with respect to F.
  DiagonalVal sub;
  /// u/F on E/F, in coordinates with respect to the images of `complement`.
  DiagonalVal quotient;
  /// Standard basis vectors completing F to a basis of E.
  std::vector<Vec> complement;
  std::vector<std::size_t> complement_indices;
  Rational slack = 0;
};

/// Throws DomainError if F is dependent or spans E, DimensionError on size
/// mismatch.
AdaptedBasis adapted_basis(const DiagonalVal& u, std::span<const Vec> F, const Rational& eps = 0);

/// Basis {b_i (x) b'_j} (index i * dim(w) + j), shifts c_i + c'_j.
DiagonalVal tensor_val(const DiagonalVal& u, const DiagonalVal& w);

/// u(x_1 ^ ... ^ x_m) = sum c_i + v(det X) - v(det B). Throws DomainError
/// if x is not a basis.
Value volume(const DiagonalVal& u, std::span<const Vec> x);

/// Volume of E / ker(u) with respect to the images of y (dim E - dim ker u
/// vectors). Equals volume() when u is reduced.
Value quotient_volume(const DiagonalVal& u, std::span<const Vec> y);

/// Valued column reduction. Rows of `m` carry shifts; the first `candidates`
/// columns are pivoted greedily (globally minimal weighted valuation, ties
/// to the lowest row then column) using column operations whose multipliers
/// have nonnegative value; the remaining columns are carried along and
/// cleared at every pivot row.
///
/// Afterwards, for y in K^candidates, the weighted valuation of m*T*y equals
/// min over pivots (v(y_p) + weight_p), and for a carried column z the value
/// sup over the span of the candidates of the coset z + span equals the
/// minimum weight of z over the non-pivot rows.
class ColumnReduction {
 public:
  struct Pivot {
    std::size_t row, col;
    Value weight;
  };

  ColumnReduction(Matrix m, std::vector<Value> row_shifts, std::size_t candidates,
                  FieldCtx ctx = FieldCtx::gauss(), bool track_transition = true);

  const Matrix& reduced() const { return m_; }
  /// candidates x candidates, det 1; only when tracking.
  const Matrix& transition() const { return t_; }
  const std::vector<Pivot>& pivots() const { return pivots_; }
  /// Candidate columns that became zero (kernel directions).
  const std::vector<std::size_t>& dead() const { return dead_; }
  const std::vector<bool>& pivot_row() const { return is_pivot_row_; }

  /// min over non-pivot rows of the weighted valuation of carried column j.
  Value residual_value(std::size_t j) const;

 private:
  Value weight(std::size_t r, std::size_t j) const;

  Matrix m_, t_;
  std::vector<Value> shifts_;
  FieldCtx ctx_;
  std::vector<Pivot> pivots_;
  std::vector<std::size_t> dead_;
  std::vector<bool> is_pivot_row_;
};

}  // namespace valvol
