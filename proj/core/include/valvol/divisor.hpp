#pragma once

// Virtual divisors eta = min_k (f_k-hat + c_k) on P^n or on a hypersurface
// V(g), their duals eta*_m(f) = inf_xi (vf(xi) - m eta(xi)) bounded from above
// by point sampling and from below by the generated sub-valuation, and the
// derived checks (double dual, restriction, width).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "valvol/hpoly.hpp"
#include "valvol/subval.hpp"

namespace valvol {

/// P^n, or the hypersurface V(g) in P^n.
struct Variety {
  std::size_t n = 1;
  std::optional<HPoly> g;

  static Variety projective(std::size_t n) { return Variety{n, std::nullopt}; }
  /// Throws DomainError unless g is a nonconstant polynomial in n+1 variables.
  static Variety hypersurface(std::size_t n, HPoly g);

  bool is_projective_space() const { return !g.has_value(); }
  /// Dimension: n or n - 1.
  std::size_t dim() const { return g ? n - 1 : n; }
  /// Degree: 1 or deg g.
  int degree() const { return g ? g->degree() : 1; }
  /// dim K[W]_m.
  std::size_t graded_dim(int m) const;
  bool contains(const ProjPoint& xi) const;
  std::string str() const;
};

struct DivisorTerm {
  HPoly f;
  Value c;
};

class Divisor {
 public:
  /// Throws DomainError on an empty term list, an INF shift, or a term
  /// vanishing identically on W.
  Divisor(Variety W, std::vector<DivisorTerm> terms, FieldCtx ctx = FieldCtx::gauss());

  /// min_i (X_i-hat + c_i) on P^n, n = c.size() - 1.
  static Divisor toric(std::vector<Value> c, FieldCtx ctx = FieldCtx::gauss());
  /// The constant 0 divisor min_i X_i-hat on P^n.
  static Divisor zero(std::size_t n, FieldCtx ctx = FieldCtx::gauss());

  const Variety& variety() const { return W_; }
  std::size_t n() const { return W_.n; }
  const std::vector<DivisorTerm>& terms() const { return terms_; }
  const FieldCtx& ctx() const { return ctx_; }
  /// lcm of the term degrees.
  int degree() const { return degree_; }

  /// For divisors of the form min over terms a*X_i^d + c on P^n with every
  /// variable present: the effective shifts c_i (eta = min_i X_i-hat + c_i).
  std::optional<std::vector<Value>> toric_shifts() const;
  bool is_toric() const { return toric_shifts().has_value(); }

  /// eta + a.
  Divisor translated(const Value& a) const;

  /// The conditions (f_k, -c_k deg f_k), plus (g, INF) on a hypersurface.
  ConditionSet dual_conditions() const;

 private:
  Variety W_;
  std::vector<DivisorTerm> terms_;
  FieldCtx ctx_;
  int degree_ = 1;
};

/// min_k (f_k-hat(xi) + c_k). Throws DomainError if xi is off W or every f_k
/// vanishes at xi.
Value divisor_eval(const Divisor& eta, const ProjPoint& xi);

struct SamplingPlan {
  std::size_t random_points = 200;
  std::uint64_t seed = 0;
  /// Add the corner points with coordinates t^w, w from the candidate set.
  bool corners = true;
};

/// Deterministic sample of points of W: corners from the value candidates of
/// eta plus random points. On a hypersurface one coordinate in which g is
/// linear is solved for; throws DomainError if there is none.
std::vector<ProjPoint> sample_points(const Divisor& eta, const SamplingPlan& plan);

/// min over the points of vf(g, xi) - m eta(xi); an upper bound for
/// eta*_m(g). Throws InputError on an empty plan.
Value dual_upper(const Divisor& eta, const HPoly& g, std::span<const ProjPoint> points);
Value dual_upper(const Divisor& eta, const HPoly& g, const SamplingPlan& plan);

/// The generated sub-valuation of the dual conditions; a lower bound for
/// eta*_m(g).
Value dual_lower(const Divisor& eta, const HPoly& g, const TruncationBudget& B = {});

struct SandwichResult {
  Value lower;
  Value upper;
  int n_used = 0;
  std::size_t points = 0;
};

/// Lower and upper bounds computed concurrently. Throws Error if
/// lower > upper.
SandwichResult dual_sandwich(const Divisor& eta, const SubvalEngine& lower_engine, const HPoly& g,
                             std::span<const ProjPoint> points);

/// Closed-form dual of the toric divisor min_i (X_i-hat + c_i) on P^n at the
/// monomial X^alpha by enumerating the candidate corners {0, -c_i}.
/// Requires max c_i = 0 (DomainError otherwise).
Value toric_dual(std::span<const Value> c, std::span<const int> alpha);

struct DoubleDualBudget {
  /// Probe polynomials: monomials and condition products up to this degree.
  int probe_degree = 2;
  TruncationBudget truncation{};
};

struct DoubleDualResult {
  Value eta;     // eta(xi)
  Value probed;  // min over probes of f-hat(xi) - lower(f)/deg f >= eta**(xi)
  Value gap;     // probed - eta >= 0
  std::size_t probes = 0;
};

DoubleDualResult double_dual_check(const Divisor& eta, const ProjPoint& xi, const DoubleDualBudget& B = {});

/// For eta on P^n and W = V(g) (or W = P^n when g is empty): the values
/// (eta*|W)(f^m + I(W)) / m for each m in `powers`, from the n = 1 graded
/// piece and the quotient by g * K[X]. Throws DomainError when eta does not
/// live on P^n.
std::vector<Value> restrict_dual(const Divisor& eta, const std::optional<HPoly>& g, const HPoly& f,
                                 std::span<const int> powers, const TruncationBudget& B = {});

struct SupResult {
  Value value;
  bool exact = false;  // false: sampled
};

/// sup eta over W: exact for toric divisors, otherwise the sampled maximum.
SupResult sup_eta(const Divisor& eta, const SamplingPlan& plan = {});

/// sup eta - min_k (vtilde(f_k)/deg f_k + c_k): an upper bound for the width.
SupResult width_bound(const Divisor& eta, const SamplingPlan& plan = {});

/// A single-polynomial representative sum_k a_k f_k^(D/d_k) of degree
/// D = degree(), with fresh generic coefficients of value D c_k.
HPoly representative(const Divisor& eta, GenericSource& src);

}  // namespace valvol
