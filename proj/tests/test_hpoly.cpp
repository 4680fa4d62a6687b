#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "valvol/errors.hpp"
#include "valvol/hpoly.hpp"
#include "valvol/parse.hpp"

using namespace valvol;

TEST(HPoly, Arithmetic) {
  HPoly x0 = HPoly::variable(3, 0), x1 = HPoly::variable(3, 1);
  HPoly f = (x0 + x1) * (x0 - x1);
  EXPECT_EQ(f, x0 * x0 - x1 * x1);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.leading_exponent(), (Exponent{2, 0, 0}));
  EXPECT_EQ(*f.divide(x0 + x1), x0 - x1);
  EXPECT_FALSE((x0 * x0 + x1 * x1).divide(x0 + x1).has_value());
  EXPECT_THROW(x0 + x0 * x1, DimensionError);
  EXPECT_EQ((x0 + x1).pow(3).size(), 4u);
}

TEST(HPoly, PropertyRingLaws) {
  gen::Gen g(21);
  for (int i = 0; i < 100; ++i) {
    HPoly a = g.hpoly(2, 2), b = g.hpoly(2, 2), c = g.hpoly(2, 1);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(*(a * c).divide(c), a);
    Vec x = g.vec(3);
    EXPECT_EQ((a * c).eval(x), a.eval(x) * c.eval(x));
  }
}

TEST(HPoly, MonomialBasisAndIndex) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int m = 0; m <= 6; ++m) {
      EXPECT_EQ(monomial_count(n, m), static_cast<std::size_t>(oracle::binomial(m + static_cast<long>(n), static_cast<long>(n))));
      MonomialIndex idx(n, m);
      for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.index(idx[i]), i);
    }
  auto e = monomial_exponents(1, 2);
  EXPECT_EQ(e, (std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}}));
  gen::Gen g(22);
  for (int i = 0; i < 50; ++i) {
    HPoly f = g.hpoly(2, 3);
    MonomialIndex idx(2, 3);
    EXPECT_EQ(idx.poly(idx.coords(f)), f);
  }
}

TEST(HPoly, HatEvaluation) {
  const FieldElem t = FieldElem::t_pow(1);
  ProjPoint xi({t, FieldElem(1), t * t});
  HPoly x0 = HPoly::variable(3, 0), x2 = HPoly::variable(3, 2);
  EXPECT_EQ(vf_eval(x0, xi), Value(1));
  EXPECT_EQ(vf_eval(x2 * x2, xi), Value(4));
  EXPECT_EQ(hat_eval(x2 * x2, xi), Value(2));
  // vf depends only on the projective point
  ProjPoint scaled({t.pow(3), t * t, t.pow(4)});
  EXPECT_EQ(vf_eval(x0 * x2 + x2 * x2, xi), vf_eval(x0 * x2 + x2 * x2, scaled));
  EXPECT_EQ(vf_eval(x0 - HPoly::variable(3, 1).scaled(t), xi), Value::inf());
}

TEST(HPoly, ParseRoundTrip) {
  HPoly f = parse_hpoly("X0^2 + t*X0*X1 - 1/2*X1^2", 2);
  EXPECT_EQ(f.coeff({1, 1}), FieldElem::t_pow(1));
  EXPECT_EQ(parse_hpoly(f.str(), 2), f);
  EXPECT_EQ(parse_hpoly("(X0 + X1)^2", 2), parse_hpoly("X0^2 + 2*X0*X1 + X1^2", 2));
  EXPECT_THROW(parse_hpoly("X0 + X1^2", 2), InputError);
  EXPECT_THROW(parse_hpoly("X3", 2), InputError);
  EXPECT_THROW(parse_hpoly("X0/X1", 2), InputError);
  gen::Gen g(23);
  for (int i = 0; i < 60; ++i) {
    HPoly h = g.hpoly(3, static_cast<int>(g.integer(0, 3)), 4);
    EXPECT_EQ(parse_hpoly(h.str(), 4), h) << h.str();
  }
}
