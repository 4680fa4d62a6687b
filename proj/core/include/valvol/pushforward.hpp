#pragma once

// Push-forward of a diagonal valuation along a sparse linear map:
// w(y) = sup { min_j v(x_j) + gamma_j : sum_j x_j Phi_j = y }.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "valvol/field.hpp"
#include "valvol/valspace.hpp"

namespace valvol {

using SparseVec = std::map<std::uint32_t, FieldElem>;

class PushForward {
 public:
  /// Columns Phi_j of a map K^N -> K^rows, with shifts gamma_j on the
  /// standard basis of K^N. A column with gamma_j = INF is a free direction:
  /// its multiples cost nothing.
  PushForward(std::size_t rows, std::vector<SparseVec> columns, std::vector<Value> gammas,
              FieldCtx ctx = FieldCtx::gauss());

  std::size_t rows() const { return rows_; }
  /// Dimension of the image.
  std::size_t rank() const { return basis_.size(); }
  bool surjective() const { return basis_.size() == rows_; }

  /// The push-forward value of y, or nullopt when y is not in the image.
  std::optional<Value> value(const SparseVec& y) const;

  /// Diagonal presentation of the image valuation; requires surjectivity.
  /// Free directions appear with INF shift.
  DiagonalVal image_valuation() const;

 private:
  struct Reduced {
    std::uint32_t row;
    SparseVec col;
    Value gamma;
  };

  std::size_t rows_;
  FieldCtx ctx_;
  std::vector<Reduced> basis_;  // ordered by pivot row
};

}  // namespace valvol
