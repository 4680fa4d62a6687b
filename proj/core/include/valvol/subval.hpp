#pragma once

// Homogeneous sub-valuations on K[X0..Xn] generated by conditions u(f) >= gamma,
// evaluated through truncations of the recovery formula
//   <C>(g) = sup_n (1/n) sup { min_i sum_j gamma_ij : g^n = sum_i prod_j b_ij }.
// For fixed n the inner sup is the push-forward of the diagonal valuation on
// formal products onto K[X]_{mn}, which is computed exactly.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "valvol/hpoly.hpp"
#include "valvol/pushforward.hpp"
#include "valvol/valspace.hpp"

namespace valvol {

/// u(f) >= gamma. gamma = INF marks f as lying in the kernel.
struct Condition {
  HPoly f;
  Value gamma;
};

class ConditionSet {
 public:
  /// n is the projective dimension (variables X0..Xn). Throws DomainError on
  /// a zero or mis-sized polynomial.
  ConditionSet(std::size_t n, std::vector<Condition> conditions, FieldCtx ctx = FieldCtx::gauss());

  /// The conditions (X_i, gamma_i).
  static ConditionSet coordinate(std::vector<Value> gammas, FieldCtx ctx = FieldCtx::gauss());

  std::size_t n() const { return n_; }
  const std::vector<Condition>& conditions() const { return conds_; }
  const FieldCtx& ctx() const { return ctx_; }
  /// Some degree D <= 4 has its products of conditions spanning K[X]_D, so
  /// every g has a power in the algebra generated by the conditions.
  bool generates() const { return generates_; }
  /// The smallest such D (0 when not generating).
  int generating_degree() const { return gen_degree_; }

 private:
  std::size_t n_;
  std::vector<Condition> conds_;
  FieldCtx ctx_;
  bool generates_ = false;
  int gen_degree_ = 0;
};

struct TruncationBudget {
  /// Powers tried, in increasing order; only those <= n_max are used.
  std::vector<int> schedule{1, 2, 4, 6, 12};
  int n_max = 12;
  /// Skip powers whose product degree m*n exceeds this.
  std::optional<int> degree_cap;
  /// Skip powers whose product count exceeds this.
  std::size_t max_products = 20000;
};

struct GeneratedValue {
  Value value;
  /// The power attaining the value.
  int n = 0;
  /// (n, Q_n(g^n)/n) for each power actually evaluated; nullopt when g^n is
  /// not a combination of products.
  std::vector<std::pair<int, std::optional<Value>>> trace;
  /// Powers skipped by the budget.
  std::vector<int> skipped;
};

/// Caches the push-forward for each product degree. Thread-safe.
class SubvalEngine {
 public:
  SubvalEngine(ConditionSet conds, TruncationBudget budget);

  const ConditionSet& conditions() const { return conds_; }
  const TruncationBudget& budget() const { return budget_; }

  /// Number of products of total degree N (without computing them).
  std::size_t product_count(int N) const;
  /// Push-forward onto K[X]_N, or nullptr when over budget.
  std::shared_ptr<const PushForward> pushforward(int N) const;

  /// Q_n(g^n): the exact best value of g^n as a combination of degree-mn
  /// products; nullopt if not representable; throws ScaleError over budget.
  std::optional<Value> power_value(const HPoly& g, int n) const;

  /// max over the budget schedule of Q_n(g^n)/n. g = 0 gives INF.
  /// Throws DomainError when no scheduled power is representable.
  GeneratedValue generated(const HPoly& g) const;
  Value value(const HPoly& g) const { return generated(g).value; }

  /// The n = 1 push-forward on K[X]_m in monomial coordinates
  /// (MonomialIndex order). Throws DomainError when degree-m products do not
  /// span K[X]_m.
  DiagonalVal graded_piece(int m) const;

 private:
  ConditionSet conds_;
  TruncationBudget budget_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const PushForward>> cache_;
};

/// Throws DomainError if C does not generate.
Value generated_value(const ConditionSet& C, const HPoly& g, const TruncationBudget& B = {});
DiagonalVal graded_piece(const ConditionSet& C, int m, const TruncationBudget& B = {});

/// min over the homogeneous pieces (the homogeneous extension).
Value homogeneous_value(const SubvalEngine& u, std::span<const HPoly> pieces);

/// max over 1 <= m <= m_max of sup_f |u(f) - w(f)| / m on the graded pieces;
/// a lower bound for the distance of the generated sub-valuations.
Value subval_distance(const SubvalEngine& u, const SubvalEngine& w, int m_max);
/// The same for two diagonal valuations on one graded piece of degree m.
Value graded_distance(const DiagonalVal& a, const DiagonalVal& b);

struct AxiomReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples random pairs of low-degree polynomials and checks, at fixed powers,
/// Q_n(ab) >= Q_n(a) + Q_n(b), Q_1(a + b) >= min(Q_1(a), Q_1(b)) and
/// Q_n(a^2) = Q_2n(a), plus monotonicity along the schedule.
AxiomReport check_subval_axioms(const SubvalEngine& u, std::size_t samples, std::uint64_t seed);

}  // namespace valvol
