#include "valvol/pushforward.hpp"

#include <map>

#include "valvol/errors.hpp"

namespace valvol {

namespace {

void axpy(SparseVec& y, const FieldElem& a, const SparseVec& x) {
  for (const auto& [r, e] : x) {
    auto it = y.find(r);
    if (it == y.end()) {
      y.emplace(r, -(a * e));
    } else {
      it->second -= a * e;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

}  // namespace

PushForward::PushForward(std::size_t rows, std::vector<SparseVec> columns, std::vector<Value> gammas,
                         FieldCtx ctx)
    : rows_(rows), ctx_(ctx) {
  if (columns.size() != gammas.size()) throw DimensionError("push-forward: columns and shifts differ");
  // Bucket the live columns by their first nonzero row; rows are processed in
  // increasing order, so every live column has its first row at or after the
  // current one.
  std::map<std::uint32_t, std::vector<std::size_t>> bucket;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!columns[j].empty()) {
      if (columns[j].rbegin()->first >= rows) throw DimensionError("push-forward: row index out of range");
      bucket[columns[j].begin()->first].push_back(j);
    }
  }
  while (!bucket.empty()) {
    auto node = bucket.extract(bucket.begin());
    const std::uint32_t r = node.key();
    auto& cand = node.mapped();
    // A column with INF shift spans a free line and always wins the pivot.
    std::size_t p = cand.front();
    for (std::size_t j : cand) {
      if (gammas[j].is_inf() != gammas[p].is_inf()) {
        if (gammas[j].is_inf()) p = j;
        continue;
      }
      if (gammas[j].is_inf()) {
        if (j < p) p = j;
        continue;
      }
      Value wj = ctx_.val(columns[j].at(r)) - gammas[j];
      Value wp = ctx_.val(columns[p].at(r)) - gammas[p];
      if (wj < wp || (wj == wp && j < p)) p = j;
    }
    const FieldElem piv = columns[p].at(r);
    for (std::size_t j : cand) {
      if (j == p) continue;
      axpy(columns[j], columns[j].at(r) / piv, columns[p]);
      columns[j].erase(r);
      if (!columns[j].empty()) bucket[columns[j].begin()->first].push_back(j);
    }
    basis_.push_back({r, std::move(columns[p]), gammas[p]});
  }
}

std::optional<Value> PushForward::value(const SparseVec& y0) const {
  SparseVec y = y0;
  Value best = Value::inf();
  for (const auto& b : basis_) {
    auto it = y.find(b.row);
    if (it == y.end()) continue;
    FieldElem a = it->second / b.col.at(b.row);
    best = vmin(best, ctx_.val(a) + b.gamma);
    axpy(y, a, b.col);
    y.erase(b.row);
  }
  if (!y.empty()) return std::nullopt;
  return best;
}

DiagonalVal PushForward::image_valuation() const {
  if (!surjective()) throw DomainError("push-forward: map is not surjective");
  Matrix basis(rows_, rows_);
  std::vector<Value> shifts;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    for (const auto& [r, e] : basis_[j].col) basis(r, j) = e;
    shifts.push_back(basis_[j].gamma);
  }
  return DiagonalVal(std::move(basis), std::move(shifts), ctx_);
}

}  // namespace valvol
