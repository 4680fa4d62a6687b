#pragma once

#include <cstdint>
#include <iosfwd>

namespace valvol {

/// Quick randomized invariant suites (field axioms, orthogonalization and
/// volume identities, sub-valuation axioms, toric duality and intersection
/// oracles). Prints one line per suite; true when all pass.
bool run_selftest(std::ostream& out, std::uint64_t seed = 0);

}  // namespace valvol
