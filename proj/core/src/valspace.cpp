#include "valvol/valspace.hpp"

#include <algorithm>

namespace valvol {

MinFormsVal::MinFormsVal(std::size_t d, std::vector<Vec> f, std::vector<Value> s, FieldCtx c)
    : dim(d), forms(std::move(f)), shifts(std::move(s)), ctx(c) {
  if (forms.empty()) throw DomainError("a min-of-forms valuation needs at least one form");
  if (forms.size() != shifts.size()) throw DimensionError("forms and shifts differ in number");
  for (const auto& l : forms)
    if (l.size() != dim) throw DimensionError("form length differs from dimension");
}

Value MinFormsVal::eval(const Vec& x) const {
  if (x.size() != dim) throw DimensionError("vector length differs from dimension");
  Value best = Value::inf();
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (shifts[j].is_inf()) continue;
    best = vmin(best, ctx.val(dot(forms[j], x)) + shifts[j]);
  }
  return best;
}

DiagonalVal::DiagonalVal(Matrix basis, std::vector<Value> shifts, FieldCtx ctx)
    : basis_(std::move(basis)), shifts_(std::move(shifts)), ctx_(ctx) {
  if (basis_.rows() != basis_.cols() || basis_.cols() != shifts_.size())
    throw DimensionError("diagonal valuation: basis and shifts have inconsistent sizes");
  identity_ = basis_ == Matrix::identity(basis_.rows());
  if (identity_) {
    inverse_ = basis_;
    det_val_ = Value(0);
    return;
  }
  auto inv = inverse(basis_);
  if (!inv) throw DomainError("diagonal valuation: basis is singular");
  inverse_ = std::move(*inv);
  det_val_ = ctx_.val(determinant(basis_));
}

DiagonalVal DiagonalVal::plain(std::size_t m, FieldCtx ctx) {
  return DiagonalVal(Matrix::identity(m), std::vector<Value>(m, Value(0)), ctx);
}

DiagonalVal DiagonalVal::standard(std::vector<Value> shifts, FieldCtx ctx) {
  const std::size_t m = shifts.size();
  return DiagonalVal(Matrix::identity(m), std::move(shifts), ctx);
}

Vec DiagonalVal::coords(const Vec& x) const {
  if (x.size() != dim()) throw DimensionError("vector length differs from dimension");
  return identity_ ? x : inverse_ * x;
}

Value DiagonalVal::eval(const Vec& x) const {
  Vec a = coords(x);
  Value best = Value::inf();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (shifts_[i].is_finite()) best = vmin(best, ctx_.val(a[i]) + shifts_[i]);
  return best;
}

bool DiagonalVal::reduced() const {
  return std::none_of(shifts_.begin(), shifts_.end(), [](const Value& c) { return c.is_inf(); });
}

MinFormsVal DiagonalVal::as_forms() const {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < dim(); ++i) rows.push_back(inverse_.row(i));
  return MinFormsVal(dim(), std::move(rows), shifts_, ctx_);
}

Value eval_val(const MinFormsVal& u, const Vec& x) { return u.eval(x); }
Value eval_val(const DiagonalVal& u, const Vec& x) { return u.eval(x); }

ColumnReduction::ColumnReduction(Matrix m, std::vector<Value> row_shifts, std::size_t candidates,
                                 FieldCtx ctx, bool track_transition)
    : m_(std::move(m)), shifts_(std::move(row_shifts)), ctx_(ctx) {
  const std::size_t R = m_.rows(), C = m_.cols();
  if (shifts_.size() != R) throw DimensionError("row shifts differ from row count");
  if (candidates > C) throw DimensionError("more candidate columns than columns");
  if (track_transition) t_ = Matrix::identity(candidates);
  is_pivot_row_.assign(R, false);

  std::vector<Value> w(R * C);
  auto refresh = [&](std::size_t j) {
    for (std::size_t r = 0; r < R; ++r) w[r * C + j] = weight(r, j);
  };
  for (std::size_t j = 0; j < C; ++j) refresh(j);

  std::vector<bool> active(candidates, true);
  for (std::size_t step = 0; step < candidates; ++step) {
    std::size_t pr = R, pc = C;
    for (std::size_t r = 0; r < R; ++r) {
      if (is_pivot_row_[r]) continue;
      for (std::size_t j = 0; j < candidates; ++j) {
        if (!active[j] || w[r * C + j].is_inf()) continue;
        if (pc == C || w[r * C + j] < w[pr * C + pc]) pr = r, pc = j;
      }
    }
    if (pc == C) break;
    const FieldElem piv = m_(pr, pc);
    for (std::size_t j = 0; j < C; ++j) {
      if (j == pc || (j < candidates && !active[j]) || m_(pr, j).is_zero()) continue;
      const FieldElem a = m_(pr, j) / piv;
      for (std::size_t r = 0; r < R; ++r)
        if (!m_(r, pc).is_zero()) m_(r, j) -= a * m_(r, pc);
      m_(pr, j) = FieldElem(0);
      if (j < candidates && track_transition)
        for (std::size_t r = 0; r < candidates; ++r)
          if (!t_(r, pc).is_zero()) t_(r, j) -= a * t_(r, pc);
      refresh(j);
    }
    pivots_.push_back({pr, pc, w[pr * C + pc]});
    is_pivot_row_[pr] = true;
    active[pc] = false;
  }
  for (std::size_t j = 0; j < candidates; ++j)
    if (active[j]) dead_.push_back(j);
}

Value ColumnReduction::weight(std::size_t r, std::size_t j) const {
  if (shifts_[r].is_inf() || m_(r, j).is_zero()) return Value::inf();
  return ctx_.val(m_(r, j)) + shifts_[r];
}

Value ColumnReduction::residual_value(std::size_t j) const {
  Value best = Value::inf();
  for (std::size_t r = 0; r < m_.rows(); ++r)
    if (!is_pivot_row_[r]) best = vmin(best, weight(r, j));
  return best;
}

Orthogonalization orthogonalize(const MinFormsVal& u, const Rational& eps) {
  if (eps < 0) throw InputError("orthogonalize: eps must be nonnegative");
  Matrix m = Matrix::from_rows(u.forms, u.dim);
  ColumnReduction red(std::move(m), u.shifts, u.dim, u.ctx);
  if (!red.dead().empty())
    throw NonReducedError("orthogonalize: valuation has a nonzero kernel",
                          red.transition().column(red.dead().front()));
  // Keep the diagonal basis in input column order.
  std::vector<Value> shifts(u.dim);
  for (const auto& p : red.pivots()) shifts[p.col] = p.weight;
  Matrix t = red.transition();
  DiagonalVal d(t, std::move(shifts), u.ctx);
  return Orthogonalization{std::move(d), std::move(t), Rational(0)};
}

namespace {

void check_vectors(std::span<const Vec> F, std::size_t m) {
  for (const auto& f : F)
    if (f.size() != m) throw DimensionError("subspace vector length differs from dimension");
}

}  // namespace

Value quotient_value(const DiagonalVal& u, std::span<const Vec> F, const Vec& x, const Rational& eps) {
  if (eps < 0) throw InputError("quotient_value: eps must be nonnegative");
  const std::size_t m = u.dim();
  check_vectors(F, m);
  if (x.size() != m) throw DimensionError("vector length differs from dimension");
  if (F.empty()) return u.eval(x);
  Matrix cols(m, F.size() + 1);
  for (std::size_t k = 0; k < F.size(); ++k) {
    Vec a = u.coords(F[k]);
    for (std::size_t i = 0; i < m; ++i) cols(i, k) = a[i];
  }
  Vec ax = u.coords(x);
  for (std::size_t i = 0; i < m; ++i) cols(i, F.size()) = ax[i];
  if (rank(Matrix::from_columns(F, m)) < F.size())
    throw DomainError("quotient_value: subspace vectors are dependent");
  ColumnReduction red(std::move(cols), u.shifts(), F.size(), u.ctx(), false);
  // Directions in the kernel of u are handled by the row shifts (INF rows).
  return red.residual_value(F.size());
}

AdaptedBasis adapted_basis(const DiagonalVal& u, std::span<const Vec> F, const Rational& eps) {
  if (eps < 0) throw InputError("adapted_basis: eps must be nonnegative");
  const std::size_t m = u.dim(), k = F.size();
  check_vectors(F, m);
  if (k >= m) throw DomainError("adapted_basis: subspace must be proper");
  Matrix fm = Matrix::from_columns(F, m);
  if (rank(fm) < k) throw DomainError("adapted_basis: subspace vectors are dependent");

  AdaptedBasis out;
  // Greedy completion by standard basis vectors.
  std::vector<Vec> span(F.begin(), F.end());
  std::size_t r = k;
  for (std::size_t i = 0; i < m && r < m; ++i) {
    span.push_back(unit_vector(m, i));
    if (rank(Matrix::from_columns(span, m)) == r + 1) {
      out.complement.push_back(span.back());
      out.complement_indices.push_back(i);
      ++r;
    } else {
      span.pop_back();
    }
  }

  Matrix cols(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vec a = u.coords(j < k ? F[j] : out.complement[j - k]);
    for (std::size_t i = 0; i < m; ++i) cols(i, j) = a[i];
  }

  // Restriction to F: forms are the rows of the F block.
  {
    std::vector<Vec> rows;
    std::vector<Value> shifts;
    for (std::size_t i = 0; i < m; ++i) {
      if (u.shifts()[i].is_inf()) continue;
      Vec row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = cols(i, j);
      rows.push_back(std::move(row));
      shifts.push_back(u.shifts()[i]);
    }
    if (rows.empty()) throw NonReducedError("adapted_basis: subspace lies in the kernel", F[0]);
    out.sub = orthogonalize(MinFormsVal(k, std::move(rows), std::move(shifts), u.ctx())).diag;
  }

  // Quotient: reduce the F block, then the complement block is read off the
  // non-pivot rows.
  {
    ColumnReduction red(cols, u.shifts(), k, u.ctx(), false);
    std::vector<Vec> rows;
    std::vector<Value> shifts;
    for (std::size_t i = 0; i < m; ++i) {
      if (red.pivot_row()[i] || u.shifts()[i].is_inf()) continue;
      Vec row(m - k);
      for (std::size_t j = k; j < m; ++j) row[j - k] = red.reduced()(i, j);
      rows.push_back(std::move(row));
      shifts.push_back(u.shifts()[i]);
    }
    if (rows.empty()) throw NonReducedError("adapted_basis: quotient is degenerate", out.complement[0]);
    out.quotient = orthogonalize(MinFormsVal(m - k, std::move(rows), std::move(shifts), u.ctx())).diag;
  }
  return out;
}

DiagonalVal tensor_val(const DiagonalVal& u, const DiagonalVal& w) {
  if (u.ctx().kind != w.ctx().kind || u.ctx().prime != w.ctx().prime)
    throw DomainError("tensor_val: valuations over different fields");
  std::vector<Value> shifts;
  shifts.reserve(u.dim() * w.dim());
  for (const auto& a : u.shifts())
    for (const auto& b : w.shifts()) shifts.push_back(a + b);
  return DiagonalVal(kron(u.basis(), w.basis()), std::move(shifts), u.ctx());
}

Value volume(const DiagonalVal& u, std::span<const Vec> x) {
  const std::size_t m = u.dim();
  if (x.size() != m) throw DomainError("volume: need exactly dim vectors");
  check_vectors(x, m);
  FieldElem d = determinant(Matrix::from_columns(x, m));
  if (d.is_zero()) throw DomainError("volume: vectors do not form a basis");
  Value total = u.ctx().val(d) - u.basis_det_val();
  for (const auto& c : u.shifts()) total = total + c;
  return total;
}

Value quotient_volume(const DiagonalVal& u, std::span<const Vec> y) {
  const std::size_t m = u.dim();
  check_vectors(y, m);
  std::vector<Vec> cols;
  Value total = Value(0);
  for (std::size_t i = 0; i < m; ++i) {
    if (u.shifts()[i].is_inf()) {
      cols.push_back(u.basis_vector(i));
    } else {
      total = total + u.shifts()[i];
    }
  }
  if (cols.size() + y.size() != m) throw DomainError("quotient_volume: wrong number of vectors");
  cols.insert(cols.end(), y.begin(), y.end());
  FieldElem d = determinant(Matrix::from_columns(cols, m));
  if (d.is_zero()) throw DomainError("quotient_volume: vectors do not form a basis of the quotient");
  return total + (u.ctx().val(d) - u.basis_det_val());
}

}  // namespace valvol
