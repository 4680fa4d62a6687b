#pragma once

// Resultants as Chow wedges: Macaulay resultants over K, wedge valuations
// against P^n or a hypersurface, Chow distances, and intersection numbers of
// virtual divisors through independent generic representatives.

#include <cstdint>
#include <span>
#include <vector>

#include "valvol/divisor.hpp"

namespace valvol {

/// Chow data: P^n (canonical normalization) or a hypersurface V(g).
using ChowSpec = Variety;

/// Res(F_0..F_n) with Res(X_0^d_0, ..., X_n^d_n) = 1; zero iff the forms have
/// a common projective zero. Macaulay quotient det M / det E (for n = 1 this
/// is the Sylvester determinant). When det E vanishes, a unimodular
/// triangular change of coordinates is applied first.
FieldElem resultant(std::span<const HPoly> F);

/// g scaled by a coefficient of minimal value, so vtilde(g) = 0.
HPoly normalize_equation(const HPoly& g, const FieldCtx& ctx = FieldCtx::gauss());

/// v(Res(F, g?)) / (prod deg F_i * deg W). F has dim W + 1 entries.
Value wedge_valuation(std::span<const HPoly> F, const ChowSpec& W, const FieldCtx& ctx = FieldCtx::gauss());

struct ProbePlan {
  int max_degree = 1;
  std::size_t random_families = 8;
  std::uint64_t seed = 0;
};

/// Probe families of dim W + 1 forms: coordinate families, coordinate
/// differences, and random forms up to max_degree.
std::vector<std::vector<HPoly>> probe_families(std::size_t n, std::size_t count, const ProbePlan& plan);

/// max over the probes of |wedge(F, W1) - wedge(F, W2)|; a lower bound for
/// the Chow distance. Throws DimensionError when the dimensions differ.
Value chow_distance(const ChowSpec& W1, const ChowSpec& W2, const ProbePlan& plan = {});

struct IntersectionResult {
  Value value;
  /// The degree normalization D^k * deg W divided out.
  Rational normalization;
  std::uint64_t seed = 0;
  /// Same value under a second seed.
  bool stable = false;
  /// Generic variables specialized to random rationals before the
  /// determinant (large Macaulay matrices).
  bool specialized = false;
};

/// eta^(l+1) wedge C_W from l+1 independent generic representatives of eta
/// (each with its own fresh variables). eta lives on W or on the ambient P^n.
/// Throws ScaleError beyond n <= 3, representative degree <= 4, deg W <= 3.
IntersectionResult intersection_number(const Divisor& eta, const ChowSpec& W, std::uint64_t seed = 0);

/// sum c_i.
Value toric_intersection(std::span<const Value> c);

}  // namespace valvol
