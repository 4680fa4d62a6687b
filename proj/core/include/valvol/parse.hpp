#pragma once

// ASCII literals for field elements and homogeneous polynomials:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := power (('*' | '/') power)*
//   power  := atom ['^' exp]
//   atom   := rational | 't' | 's'N | 'X'N | '(' expr ')'
//   exp    := ['-'] N | '(' ['-'] p ['/' q] ')'
// Only t takes non-integral exponents; division is by X-free factors.

#include <cstddef>
#include <string_view>

#include "valvol/field.hpp"
#include "valvol/hpoly.hpp"

namespace valvol {

/// Throws InputError with the column of the problem.
FieldElem parse_field(std::string_view text);

/// Polynomial in X0..X(nvars-1); must be homogeneous. Throws InputError.
HPoly parse_hpoly(std::string_view text, std::size_t nvars);

}  // namespace valvol
