#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "valvol/errors.hpp"
#include "valvol/parse.hpp"
#include "valvol/subval.hpp"

using namespace valvol;

namespace {

// For coordinate conditions u(X_i) >= gamma_i the generated sub-valuation is
// the monomial valuation min over terms of v(a) + alpha . gamma.
Value monomial_oracle(const HPoly& f, const std::vector<Value>& gam) {
  Value best = Value::inf();
  for (const auto& [e, a] : f.terms()) {
    Value s = val(a);
    for (std::size_t i = 0; i < e.size(); ++i) s += Rational(e[i]) * gam[i];
    best = vmin(best, s);
  }
  return best;
}

}  // namespace

TEST(Subval, CoordinateConditionsGiveMonomialValuation) {
  gen::Gen g(51);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<Value> gam = g.shifts(n + 1);
      SubvalEngine u(ConditionSet::coordinate(gam), TruncationBudget{});
      for (int i = 0; i < 15; ++i) {
        HPoly f = g.hpoly(n, static_cast<int>(g.integer(1, 3)), 4);
        EXPECT_EQ(u.value(f), monomial_oracle(f, gam)) << f;
      }
    }
  }
}

TEST(Subval, ZeroConditionsOnAllMonomials) {
  SubvalEngine u(ConditionSet::coordinate({0, 0}), TruncationBudget{});
  EXPECT_EQ(u.value(parse_hpoly("X0^3 + 5*X0*X1^2", 2)), Value(0));
  EXPECT_EQ(u.value(HPoly(2, 2)), Value::inf());
}

TEST(Subval, PowersRecoverRoots) {
  // u(X0^2) >= 2a together with u(X1) >= 0 forces u(X0) >= a only through the
  // power formula: X0 alone is not a product of conditions of value >= a.
  const Rational a(3, 2);
  HPoly x0sq = parse_hpoly("X0^2", 2), x1 = parse_hpoly("X1", 2), x0 = parse_hpoly("X0", 2);
  ConditionSet C(1, {{x0sq, Value(2 * a)}, {x1, Value(0)}, {x0, Value(0)}});
  SubvalEngine u(C, TruncationBudget{});
  GeneratedValue gv = u.generated(x0);
  EXPECT_EQ(gv.value, Value(a));
  EXPECT_EQ(gv.n, 2);
}

TEST(Subval, GradedPieceShifts) {
  const Rational a(1, 3);
  SubvalEngine u(ConditionSet::coordinate({Value(2 * a), Value(a), Value(0)}), TruncationBudget{});
  DiagonalVal piece = u.graded_piece(1);
  EXPECT_EQ(piece.shifts(), (std::vector<Value>{Value(2 * a), Value(a), Value(0)}));
  // degree 2 in P^2: shifts alpha . gamma in deglex order
  DiagonalVal p2 = u.graded_piece(2);
  MonomialIndex idx(2, 2);
  for (std::size_t i = 0; i < idx.size(); ++i)
    EXPECT_EQ(p2.eval(unit_vector(idx.size(), i)), Value(Rational(idx[i][0]) * 2 * a + Rational(idx[i][1]) * a));
}

TEST(Subval, NonGeneratingConditions) {
  ConditionSet C(1, {{parse_hpoly("X0", 2), Value(1)}});
  EXPECT_FALSE(C.generates());
  EXPECT_THROW(generated_value(C, parse_hpoly("X1", 2)), DomainError);
  EXPECT_THROW(SubvalEngine(C, TruncationBudget{}), DomainError);
}

TEST(Subval, KernelConditions) {
  ConditionSet C(1, {{parse_hpoly("X0", 2), Value::inf()}, {parse_hpoly("X1", 2), Value(0)}});
  SubvalEngine u(C, TruncationBudget{});
  EXPECT_EQ(u.value(parse_hpoly("X0*X1", 2)), Value::inf());
  EXPECT_EQ(u.value(parse_hpoly("X0 + X1", 2)), Value(0));
}

TEST(Subval, BudgetSkipsAreRecorded) {
  TruncationBudget b;
  b.max_products = 10;
  SubvalEngine u(ConditionSet::coordinate({0, 0, 0}), b);
  GeneratedValue gv = u.generated(parse_hpoly("X0^2", 3));
  EXPECT_FALSE(gv.skipped.empty());
  EXPECT_EQ(gv.value, Value(0));
}

TEST(Subval, DistanceExample) {
  SubvalEngine u(ConditionSet::coordinate({0, 0}), TruncationBudget{});
  SubvalEngine w(ConditionSet::coordinate({Value(1), Value(0)}), TruncationBudget{});
  EXPECT_EQ(subval_distance(u, w, 3), Value(1));
  EXPECT_EQ(subval_distance(u, u, 3), Value(0));
  EXPECT_EQ(graded_distance(u.graded_piece(2), w.graded_piece(2)), Value(2));
}

TEST(Subval, PropertyAxioms) {
  gen::Gen g(52);
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<Condition> conds;
    const std::size_t n = 2;
    for (std::size_t i = 0; i <= n; ++i) conds.push_back({HPoly::variable(n + 1, i), g.shifts(1)[0]});
    conds.push_back({g.hpoly(n, 1, 3), g.shifts(1)[0]});
    SubvalEngine u(ConditionSet(n, conds), TruncationBudget{});
    AxiomReport r = check_subval_axioms(u, 25, static_cast<std::uint64_t>(rep));
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(Subval, MonotoneAlongSchedule) {
  gen::Gen g(53);
  ConditionSet C(1, {{parse_hpoly("X0", 2), Value(1)},
                     {parse_hpoly("X1", 2), Value(0)},
                     {parse_hpoly("X0 + X1", 2), Value(Rational(1, 2))}});
  SubvalEngine u(C, TruncationBudget{});
  for (int i = 0; i < 10; ++i) {
    HPoly f = g.hpoly(1, static_cast<int>(g.integer(1, 2)));
    GeneratedValue gv = u.generated(f);
    std::optional<Value> first;
    for (const auto& [n, v] : gv.trace) {
      if (!v) continue;
      if (!first) first = *v;
      EXPECT_LE(*v, gv.value);
    }
    ASSERT_TRUE(first);
    EXPECT_GE(gv.value, *first);
  }
}
