#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "valvol/chow.hpp"
#include "valvol/errors.hpp"
#include "valvol/parse.hpp"

using namespace valvol;

namespace {

const FieldElem t = FieldElem::t_pow(1);

HPoly binary(const std::vector<Rational>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  HPoly f(2, d);
  for (int k = 0; k <= d; ++k)
    if (c[static_cast<std::size_t>(k)] != 0) f.add_term({d - k, k}, FieldElem(c[static_cast<std::size_t>(k)]));
  return f;
}

}  // namespace

TEST(Resultant, Normalization) {
  std::vector<HPoly> F{parse_hpoly("X0", 3), parse_hpoly("X1", 3), parse_hpoly("X2", 3)};
  EXPECT_EQ(resultant(F), FieldElem(1));
  std::vector<HPoly> G{parse_hpoly("X0^2", 3), parse_hpoly("X1^3", 3), parse_hpoly("X2", 3)};
  EXPECT_EQ(resultant(G), FieldElem(1));
  std::vector<HPoly> S{parse_hpoly("X0^2 + 3*X1^2", 2), parse_hpoly("2*X0 - X1", 2)};
  EXPECT_EQ(resultant(S), FieldElem(oracle::binary_resultant({1, 0, 3}, {2, -1})));
}

TEST(Resultant, BinaryMatchesSylvesterOracle) {
  gen::Gen g(71);
  for (int i = 0; i < 100; ++i) {
    const long d = g.integer(1, 3), e = g.integer(1, 3);
    std::vector<Rational> f(static_cast<std::size_t>(d + 1)), h(static_cast<std::size_t>(e + 1));
    for (auto& x : f) x = g.rational();
    for (auto& x : h) x = g.rational();
    if (f.front() == 0 && f.back() == 0) f.front() = 1;
    if (h.front() == 0 && h.back() == 0) h.back() = 1;
    std::vector<HPoly> F{binary(f), binary(h)};
    if (F[0].is_zero() || F[1].is_zero()) continue;
    EXPECT_EQ(resultant(F), FieldElem(oracle::binary_resultant(f, h))) << F[0] << " , " << F[1];
  }
}

TEST(Resultant, VanishesOnCommonZero) {
  // both vanish at [1 : 1 : 1]
  std::vector<HPoly> F{parse_hpoly("X0 - X1", 3), parse_hpoly("X1 - X2", 3), parse_hpoly("X0^2 - X1*X2", 3)};
  EXPECT_TRUE(resultant(F).is_zero());
  std::vector<HPoly> G{parse_hpoly("X0 - X1", 3), parse_hpoly("X1 - X2", 3), parse_hpoly("X0^2 + X1*X2", 3)};
  EXPECT_FALSE(resultant(G).is_zero());
}

TEST(Resultant, PropertyMultiplicative) {
  gen::Gen g(72);
  for (int i = 0; i < 15; ++i) {
    HPoly a = g.hpoly(2, 1, 3), b = g.hpoly(2, 1, 3), c = g.hpoly(2, 1, 3), d = g.hpoly(2, 1, 3);
    std::vector<HPoly> prod{a * b, c, d}, fa{a, c, d}, fb{b, c, d};
    EXPECT_EQ(resultant(prod), resultant(fa) * resultant(fb));
  }
}

TEST(Resultant, SpecializationCommutes) {
  gen::Gen g(73);
  for (int i = 0; i < 20; ++i) {
    GenericSource src(FieldCtx::gauss(static_cast<std::uint64_t>(i)), 0, 1);
    HPoly f(2, 2), h(2, 2);
    for (const auto& e : monomial_exponents(1, 2)) {
      f.add_term(e, src.fresh_generic(Value(g.integer(-1, 1))));
      h.add_term(e, src.fresh_generic(Value(g.integer(-1, 1))));
    }
    std::map<std::uint32_t, Rational> at;
    for (std::uint32_t k = 1; k <= 6; ++k) at[k] = g.nonzero_rational();
    std::vector<HPoly> F{f, h}, Fs{f.specialize(at), h.specialize(at)};
    EXPECT_EQ(resultant(F).specialize(at), resultant(Fs));
  }
}

TEST(Wedge, Valuations) {
  std::vector<HPoly> F{parse_hpoly("t*X0", 2), parse_hpoly("X1", 2)};
  EXPECT_EQ(wedge_valuation(F, Variety::projective(1)), Value(1));
  std::vector<HPoly> G{parse_hpoly("X0^2", 3), parse_hpoly("X1", 3)};
  Variety line = Variety::hypersurface(2, parse_hpoly("X2", 3));
  EXPECT_EQ(wedge_valuation(G, line), Value(0));
  std::vector<HPoly> H{parse_hpoly("X0", 3), parse_hpoly("X1", 3)};
  // X0 = X1 = 0 leaves only X2 = 0 on V(X2 + t X0): no common point
  EXPECT_EQ(wedge_valuation(H, Variety::hypersurface(2, parse_hpoly("X2 + t*X0", 3))), Value(0));
  std::vector<HPoly> K{parse_hpoly("X1", 3), parse_hpoly("X2", 3)};
  EXPECT_EQ(wedge_valuation(K, line), Value::inf());
  EXPECT_EQ(normalize_equation(parse_hpoly("t*X0 + t^2*X1", 2)).vtilde(), Value(0));
}

TEST(Wedge, ChowDistance) {
  Variety a = Variety::hypersurface(2, parse_hpoly("X2", 3));
  Variety b = Variety::hypersurface(2, parse_hpoly("X2 + t*X0", 3));
  EXPECT_EQ(chow_distance(a, a), Value(0));
  // the probe (X1, X2) vanishes at a common point of V(X2) only
  EXPECT_EQ(chow_distance(a, b), Value::inf());
  EXPECT_THROW(chow_distance(a, Variety::projective(2)), DimensionError);
}

TEST(Intersection, ToricValues) {
  IntersectionResult r = intersection_number(Divisor::toric({Value(-1), Value(0)}), Variety::projective(1), 1);
  EXPECT_EQ(r.value, Value(-1));
  EXPECT_TRUE(r.stable);
  r = intersection_number(Divisor::toric({Value(-1), Value(Rational(-1, 2)), Value(0)}), Variety::projective(2), 2);
  EXPECT_EQ(r.value, Value(Rational(-3, 2)));
  EXPECT_TRUE(r.stable);
  Variety line = Variety::hypersurface(2, parse_hpoly("X2", 3));
  r = intersection_number(Divisor::toric({Value(-1), Value(0), Value(0)}), line, 3);
  EXPECT_EQ(r.value, Value(-1));
}

TEST(Intersection, PropertyMatchesToricFormula) {
  gen::Gen g(74);
  for (int i = 0; i < 8; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 2));
    std::vector<Value> c = g.shifts(n + 1);
    IntersectionResult r = intersection_number(Divisor::toric(c), Variety::projective(n), static_cast<std::uint64_t>(i));
    EXPECT_EQ(r.value, toric_intersection(c));
    EXPECT_TRUE(r.stable);
  }
}

TEST(Intersection, DegreeTwoTerms) {
  // min(X0^2-hat - 1, X1^2-hat) is the toric divisor with shifts (-1, 0)
  Divisor eta(Variety::projective(1), {{parse_hpoly("X0^2", 2), Value(-1)}, {parse_hpoly("X1^2", 2), Value(0)}});
  IntersectionResult r = intersection_number(eta, Variety::projective(1), 5);
  EXPECT_EQ(r.value, Value(-1));
  EXPECT_EQ(r.normalization, Rational(4));
}

TEST(Intersection, ScaleLimits) {
  EXPECT_THROW(intersection_number(Divisor::toric({0, 0, 0, 0, 0}), Variety::projective(4)), ScaleError);
}
