#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "valvol/errors.hpp"
#include "valvol/pushforward.hpp"
#include "valvol/valspace.hpp"

using namespace valvol;

namespace {

const FieldElem t = FieldElem::t_pow(1);

std::vector<Vec> units(std::size_t n) {
  std::vector<Vec> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(unit_vector(n, i));
  return u;
}

}  // namespace

TEST(Orthogonalize, TwoFormsExample) {
  // min(v(x0), v(x0 + x1)) is already diagonal in the standard basis
  MinFormsVal u(2, {{1, 0}, {1, 1}}, {0, 0});
  Orthogonalization o = orthogonalize(u);
  EXPECT_EQ(o.diag.shifts(), (std::vector<Value>{0, 0}));
  EXPECT_EQ(o.slack, 0);
  EXPECT_EQ(determinant(o.transition), FieldElem(1));
  EXPECT_EQ(o.diag.eval({t, FieldElem(-1) * t}), Value(1));
}

TEST(Orthogonalize, NonReducedWitness) {
  MinFormsVal u(2, {{1, 0}}, {0});
  try {
    orthogonalize(u);
    FAIL();
  } catch (const NonReducedError& e) {
    ASSERT_EQ(e.witness().size(), 2u);
    EXPECT_FALSE(is_zero(e.witness()));
    EXPECT_EQ(u.eval(e.witness()), Value::inf());
  }
}

TEST(Orthogonalize, PropertyAgreesWithForms) {
  gen::Gen g(41);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    MinFormsVal u = g.forms(n);
    Orthogonalization o = orthogonalize(u);
    EXPECT_EQ(determinant(o.transition), FieldElem(1));
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(u.eval(o.diag.basis_vector(k)), o.diag.shifts()[k]);
    for (int j = 0; j < 5; ++j) {
      Vec x = g.vec(n);
      EXPECT_EQ(o.diag.eval(x), u.eval(x));
    }
  }
}

TEST(Orthogonalize, PadicInstance) {
  FieldCtx ctx = FieldCtx::padic(2);
  MinFormsVal u(2, {{1, 1}, {1, -1}}, {0, 0}, ctx);
  Orthogonalization o = orthogonalize(u);
  gen::Gen g(42);
  for (int i = 0; i < 50; ++i) {
    Vec x{FieldElem(g.rational(20, 8)), FieldElem(g.rational(20, 8))};
    EXPECT_EQ(o.diag.eval(x), u.eval(x));
  }
  // e0 = ((1,1) + (1,-1))/2 loses one power of 2 relative to the forms
  EXPECT_EQ(u.eval({FieldElem(1), FieldElem(0)}), Value(0));
  EXPECT_EQ(o.diag.eval({FieldElem(2), FieldElem(0)}), Value(1));
}

TEST(Quotient, Examples) {
  DiagonalVal u = DiagonalVal::plain(2);
  std::vector<Vec> F{{FieldElem(1), FieldElem(0)}};
  EXPECT_EQ(quotient_value(u, F, {t, FieldElem(1)}), Value(0));
  EXPECT_EQ(quotient_value(u, F, {FieldElem(1), FieldElem(0)}), Value::inf());
  // sup over x + F of u: with F = (1, 1), x = (t^-1, 0) can be moved to
  // (0, -t^-1), still of value -1
  std::vector<Vec> G{{FieldElem(1), FieldElem(1)}};
  EXPECT_EQ(quotient_value(u, G, {t.inv(), FieldElem(0)}), Value(-1));
  std::vector<Vec> dep{{FieldElem(1), FieldElem(0)}, {FieldElem(2), FieldElem(0)}};
  EXPECT_THROW(quotient_value(u, dep, {FieldElem(1), FieldElem(1)}), DomainError);
}

TEST(Quotient, PropertyDominatesCoset) {
  gen::Gen g(43);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 4));
    DiagonalVal u = g.diagonal(n);
    std::vector<Vec> F{g.vec(n, false)};
    Vec x = g.vec(n);
    Value q = quotient_value(u, F, x);
    EXPECT_GE(q, u.eval(x));
    for (int j = 0; j < 4; ++j) EXPECT_GE(q, u.eval(x + scale(g.simple(), F[0])));
  }
}

TEST(Volume, Examples) {
  DiagonalVal u = DiagonalVal::plain(2);
  std::vector<Vec> x{{t, FieldElem(0)}, {FieldElem(0), FieldElem(1)}};
  EXPECT_EQ(volume(u, x), Value(1));
  DiagonalVal w = DiagonalVal::standard({Value(Rational(1, 2)), Value(2)});
  EXPECT_EQ(volume(w, units(2)), Value(Rational(5, 2)));
  std::vector<Vec> dep{{FieldElem(1), FieldElem(0)}, {FieldElem(1), FieldElem(0)}};
  EXPECT_THROW(volume(u, dep), DomainError);
}

TEST(Volume, PropertyBasisChange) {
  gen::Gen g(44);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    DiagonalVal u = g.diagonal(n);
    Matrix X = g.invertible(n), A = g.invertible(n);
    std::vector<Vec> x, xa;
    for (std::size_t k = 0; k < n; ++k) {
      x.push_back(X.column(k));
      xa.push_back((X * A).column(k));
    }
    EXPECT_EQ(volume(u, xa), volume(u, x) + val(determinant(A)));
  }
}

TEST(Volume, PropertyHadamardAndOrthogonalBasis) {
  gen::Gen g(45);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    MinFormsVal u = g.forms(n);
    Orthogonalization o = orthogonalize(u);
    // explicit sum over the orthogonal basis, evaluated through the forms
    Value explicit_sum = 0;
    std::vector<Vec> b;
    for (std::size_t k = 0; k < n; ++k) {
      b.push_back(o.diag.basis_vector(k));
      explicit_sum += u.eval(b.back());
    }
    EXPECT_EQ(volume(o.diag, b), explicit_sum);
    Matrix X = g.invertible(n);
    std::vector<Vec> x;
    Value hadamard = 0;
    for (std::size_t k = 0; k < n; ++k) {
      x.push_back(X.column(k));
      hadamard += u.eval(x.back());
    }
    EXPECT_GE(volume(o.diag, x), hadamard);
  }
}

TEST(AdaptedBasis, PropertyQuotientAdditivity) {
  gen::Gen g(46);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 4));
    DiagonalVal u = g.diagonal(n);
    const std::size_t k = static_cast<std::size_t>(g.integer(1, static_cast<long>(n) - 1));
    Matrix Fm = g.matrix(n, k);
    if (rank(Fm) < k) continue;
    std::vector<Vec> F;
    for (std::size_t j = 0; j < k; ++j) F.push_back(Fm.column(j));
    AdaptedBasis ab = adapted_basis(u, F);
    EXPECT_EQ(ab.sub.dim(), k);
    EXPECT_EQ(ab.quotient.dim(), n - k);
    std::vector<Vec> all = F;
    all.insert(all.end(), ab.complement.begin(), ab.complement.end());
    EXPECT_EQ(volume(u, all), volume(ab.sub, units(k)) + volume(ab.quotient, units(n - k)));
    // the sub-valuation is u restricted to span F
    Vec y = g.vec(k);
    Vec x(n);
    for (std::size_t j = 0; j < k; ++j) x = x + scale(y[j], F[j]);
    EXPECT_EQ(ab.sub.eval(y), u.eval(x));
    // the quotient valuation matches quotient_value on the complement
    Vec z = g.vec(n - k);
    Vec xz(n);
    for (std::size_t j = 0; j < n - k; ++j) xz = xz + scale(z[j], ab.complement[j]);
    EXPECT_EQ(ab.quotient.eval(z), quotient_value(u, F, xz));
  }
}

TEST(Tensor, PropertyVolumeOfTensorAndDirectSum) {
  gen::Gen g(47);
  for (int i = 0; i < 60; ++i) {
    const std::size_t a = static_cast<std::size_t>(g.integer(1, 3)), b = static_cast<std::size_t>(g.integer(1, 3));
    DiagonalVal u = g.diagonal(a), w = g.diagonal(b);
    Value vu = volume(u, units(a)), vw = volume(w, units(b));
    DiagonalVal uw = tensor_val(u, w);
    EXPECT_EQ(volume(uw, units(a * b)), Rational(static_cast<long>(b)) * vu + Rational(static_cast<long>(a)) * vw);
    // direct sum: block diagonal basis, concatenated shifts
    Matrix block(a + b, a + b);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < a; ++c) block(r, c) = u.basis()(r, c);
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < b; ++c) block(a + r, a + c) = w.basis()(r, c);
    std::vector<Value> s = u.shifts();
    s.insert(s.end(), w.shifts().begin(), w.shifts().end());
    EXPECT_EQ(volume(DiagonalVal(block, s), units(a + b)), vu + vw);
    // u (x) w on pure tensors is additive
    Vec x = g.vec(a, false), y = g.vec(b, false);
    Vec xy;
    for (const auto& xi : x)
      for (const auto& yj : y) xy.push_back(xi * yj);
    EXPECT_EQ(uw.eval(xy), u.eval(x) + w.eval(y));
  }
}

TEST(Volume, QuotientVolumeWithKernel) {
  DiagonalVal u(Matrix::identity(3), {Value(1), Value::inf(), Value(2)});
  EXPECT_FALSE(u.reduced());
  std::vector<Vec> y{unit_vector(3, 0), unit_vector(3, 2)};
  EXPECT_EQ(quotient_volume(u, y), Value(3));
  DiagonalVal r = DiagonalVal::standard({Value(1), Value(2)});
  EXPECT_EQ(quotient_volume(r, units(2)), volume(r, units(2)));
}

TEST(ColumnReduction, WeightedValueIsMinOverPivots) {
  gen::Gen g(48);
  for (int i = 0; i < 100; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(2, 4));
    const std::size_t cols = static_cast<std::size_t>(g.integer(1, static_cast<long>(rows)));
    Matrix m = g.matrix(rows, cols);
    if (rank(m) < cols) continue;
    std::vector<Value> rs = g.shifts(rows);
    ColumnReduction cr(m, rs, cols);
    ASSERT_EQ(cr.pivots().size(), cols);
    EXPECT_EQ(determinant(cr.transition()), FieldElem(1));
    Vec y = g.vec(cols);
    Vec my = m * (cr.transition() * y);
    Value weighted = Value::inf();
    for (std::size_t r = 0; r < rows; ++r) weighted = vmin(weighted, val(my[r]) + rs[r]);
    Value expect = Value::inf();
    for (const auto& p : cr.pivots()) expect = vmin(expect, val(y[p.col]) + p.weight);
    EXPECT_EQ(weighted, expect);
  }
}

TEST(PushForward, InvertibleMapMatchesDiagonal) {
  gen::Gen g(49);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 4));
    Matrix phi = g.invertible(n);
    std::vector<Value> gam = g.shifts(n);
    std::vector<SparseVec> cols(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        if (!phi(r, j).is_zero()) cols[j][static_cast<std::uint32_t>(r)] = phi(r, j);
    PushForward pf(n, cols, gam);
    EXPECT_TRUE(pf.surjective());
    DiagonalVal ref(phi, gam);
    DiagonalVal img = pf.image_valuation();
    for (int k = 0; k < 5; ++k) {
      Vec y = g.vec(n);
      SparseVec sy;
      for (std::size_t r = 0; r < n; ++r)
        if (!y[r].is_zero()) sy[static_cast<std::uint32_t>(r)] = y[r];
      EXPECT_EQ(*pf.value(sy), ref.eval(y));
      EXPECT_EQ(img.eval(y), ref.eval(y));
    }
  }
}

TEST(PushForward, FibreSupremumMatchesQuotient) {
  // w(y) = sup over the fibre = (u / ker Phi)(x0) for any preimage x0
  gen::Gen g(50);
  for (int i = 0; i < 100; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(1, 3));
    const std::size_t n = rows + static_cast<std::size_t>(g.integer(1, 2));
    Matrix phi = g.matrix(rows, n);
    if (rank(phi) < rows) continue;
    std::vector<Value> gam = g.shifts(n);
    std::vector<SparseVec> cols(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < rows; ++r)
        if (!phi(r, j).is_zero()) cols[j][static_cast<std::uint32_t>(r)] = phi(r, j);
    PushForward pf(rows, cols, gam);
    Vec x0 = g.vec(n);
    Vec y = phi * x0;
    SparseVec sy;
    for (std::size_t r = 0; r < rows; ++r)
      if (!y[r].is_zero()) sy[static_cast<std::uint32_t>(r)] = y[r];
    std::vector<Vec> ker = kernel(phi);
    Value expect = ker.empty() ? DiagonalVal::standard(gam).eval(x0)
                               : quotient_value(DiagonalVal::standard(gam), ker, x0);
    auto got = pf.value(sy);
    ASSERT_TRUE(got);
    EXPECT_EQ(*got, expect);
  }
}

TEST(PushForward, OutsideImageAndFreeDirections) {
  std::vector<SparseVec> cols{{{0u, FieldElem(1)}}, {{1u, FieldElem(1)}, {0u, FieldElem(1)}}};
  PushForward pf(3, cols, {Value(1), Value::inf()});
  EXPECT_FALSE(pf.surjective());
  EXPECT_FALSE(pf.value({{2u, FieldElem(1)}}).has_value());
  // e0 costs 1; e1 is reachable for free through the INF column
  EXPECT_EQ(*pf.value({{0u, FieldElem(1)}}), Value(1));
  EXPECT_EQ(*pf.value({{0u, FieldElem(1)}, {1u, FieldElem(1)}}), Value::inf());
  // t*e1 forces x1 = t and x0 = -t
  EXPECT_EQ(*pf.value({{1u, t}}), Value(2));
}
