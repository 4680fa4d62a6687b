#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "valvol/config.hpp"
#include "valvol/errors.hpp"
#include "valvol/harness.hpp"
#include "valvol/parse.hpp"

using namespace valvol;

namespace {

std::vector<Rational> rationals(const std::vector<Value>& c) {
  std::vector<Rational> r;
  for (const auto& v : c) r.push_back(v.rational());
  return r;
}

}  // namespace

TEST(Harness, ToricVolumeMatchesOracle) {
  gen::Gen g(81);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Value> c = g.shifts(n + 1);
    Value mx = c[0];
    for (const auto& x : c) mx = vmax(mx, x);
    for (auto& x : c) x = x - mx;
    for (int m = 1; m <= 4; ++m) {
      VolumeResult v = pn_volume(Divisor::toric(c), m);
      EXPECT_TRUE(v.exact);
      EXPECT_EQ(v.lo, Value(oracle::toric_volume(rationals(c), m)));
      EXPECT_EQ(v.hi, v.lo);
    }
  }
}

TEST(Harness, ToricVolumeNormalizesShifts) {
  // translating eta by a shifts the dual of degree m forms by -m a
  VolumeResult a = pn_volume(Divisor::toric({Value(-1), Value(0)}), 3);
  VolumeResult b = pn_volume(Divisor::toric({Value(1), Value(2)}), 3);
  EXPECT_EQ(b.lo, a.lo - Value(3 * 4 * 2));
}

TEST(Harness, NonToricVolumeInterval) {
  Divisor eta(Variety::projective(1), {{parse_hpoly("X0", 2), Value(-1)},
                                       {parse_hpoly("X1", 2), Value(0)},
                                       {parse_hpoly("X0 + X1", 2), Value(Rational(-1, 2))}});
  for (int m = 1; m <= 3; ++m) {
    VolumeResult v = pn_volume(eta, m);
    EXPECT_LE(v.lo, v.hi);
    EXPECT_TRUE(v.hi.is_finite());
  }
}

TEST(Harness, HypersurfaceBasisCertificate) {
  for (const char* g : {"X2", "X0*X1 - X2^2", "X0^2 + X1*X2 + t*X2^2"}) {
    HPoly gp = parse_hpoly(g, 3);
    for (int m = gp.degree(); m <= gp.degree() + 3; ++m) {
      HypersurfaceBasis hb = hypersurface_basis(gp, m);
      EXPECT_EQ(hb.monomials.size(), Variety::hypersurface(2, gp).graded_dim(m));
      EXPECT_TRUE(hb.certificate == FieldElem(1) || hb.certificate == FieldElem(-1));
    }
  }
  EXPECT_THROW(hypersurface_basis(parse_hpoly("X0*X1", 3), 1), DomainError);
}

TEST(Harness, HyperplaneReducesToLine) {
  Divisor theta = Divisor::toric({Value(-1), Value(Rational(-1, 2)), Value(0)});
  Divisor line = Divisor::toric({Value(-1), Value(Rational(-1, 2))});
  for (int m = 1; m <= 6; ++m) {
    VolumeResult h = hypersurface_volume(theta, parse_hpoly("X2", 3), m);
    EXPECT_TRUE(h.exact);
    EXPECT_EQ(h.lo, pn_volume(line, m).lo);
  }
}

TEST(Harness, VerifyMainTable) {
  ExperimentConfig cfg = parse_config("[variety]\nkind = projective\nn = 1\n[divisor]\nX0 ; -1\nX1 ; 0\n"
                                      "[experiment]\nm = 1..5\n");
  MainReport rep = verify_main(cfg);
  EXPECT_FALSE(rep.violation);
  EXPECT_FALSE(rep.failure);
  ASSERT_EQ(rep.rows.size(), 5u);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.lhs_lo, Value(Rational(1, 2)));
    EXPECT_EQ(row.slack_lo, Value(0));
    EXPECT_EQ(row.kind, "exact");
  }
  const std::string csv = table_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "m,dim,vol_lo,vol_hi,lhs_lo,lhs_hi,rhs,slack_lo,status");
  EXPECT_NE(csv.find("3,4,6,6,1/2,1/2,1/2,0,exact\r\n"), std::string::npos);
  auto j = nlohmann::json::parse(table_json(rep));
  EXPECT_EQ(j["rows"].size(), 5u);
}

TEST(Harness, FailedRowsAreReported) {
  ExperimentConfig cfg = parse_config("[variety]\nkind = projective\nn = 2\n[divisor]\nX0 ; 0\nX1 ; 0\n"
                                      "X2 ; 0\nX0 + X1 ; 1\n[experiment]\nm = 1, 99\n");
  MainReport rep = verify_main(cfg);
  EXPECT_TRUE(rep.failure);
  EXPECT_EQ(rep.rows[1].kind, "error");
  EXPECT_NE(table_csv(rep).find("error"), std::string::npos);
}

TEST(Harness, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(Harness, ParallelForVisitsEveryIndex) {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  setenv("VALVOL_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1u);
  unsetenv("VALVOL_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Config, ParsesSectionsAndRanges) {
  EXPECT_EQ(parse_range("1..4, 8"), (std::vector<int>{1, 2, 3, 4, 8}));
  EXPECT_THROW(parse_range("4..1"), InputError);
  ExperimentConfig cfg = parse_config(
      "# comment\n[variety]\nkind = hypersurface\nn = 2\ng = X0*X1 - X2^2\n"
      "[divisor]\nX0 ; -1\nX1 ; 0\n[conditions]\nX0 ; 2\n"
      "[experiment]\nm = 2..3\nseed = 9\ntolerance = 1/100\nschedule = 1, 2\nformat = json\n"
      "[polys]\nX0 + X1\n");
  EXPECT_EQ(cfg.variety.degree(), 2);
  EXPECT_EQ(cfg.divisor.size(), 2u);
  EXPECT_EQ(cfg.conditions.size(), 1u);
  EXPECT_EQ(cfg.m_range, (std::vector<int>{2, 3}));
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.tolerance, Rational(1, 100));
  EXPECT_EQ(cfg.schedule, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.format, "json");
  EXPECT_EQ(cfg.polys.size(), 1u);
}

TEST(Config, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const InputError& e) {
      return std::string(e.what()).substr(0, 7);
    }
    return std::string("none");
  };
  EXPECT_EQ(line_of("[variety]\nn = 1\n[bogus]\n"), "line 3:");
  const std::string v = "[variety]\nkind = projective\nn = 1\n";
  EXPECT_EQ(line_of(v + "[divisor]\nX0 ; 0\nX1 + ; 0\n"), "line 6:");
  EXPECT_EQ(line_of("[experiment]\nm = abc\n"), "line 2:");
  EXPECT_EQ(line_of(v + "[divisor]\nX0 ; inf\nX1 ; 0\n"), "line 5:");
  EXPECT_NE(line_of("[divisor]\nX0 ; 0\n"), "none");
}

TEST(Config, ValuationBlocksRoundTrip) {
  gen::Gen g(82);
  for (int i = 0; i < 30; ++i) {
    MinFormsVal u = g.forms(3);
    auto back = std::get<MinFormsVal>(parse_valuation(write_valuation(u)));
    EXPECT_EQ(back.forms, u.forms);
    EXPECT_EQ(back.shifts, u.shifts);
    DiagonalVal d = g.diagonal(2);
    auto dback = std::get<DiagonalVal>(parse_valuation(write_valuation(d)));
    EXPECT_EQ(dback.basis(), d.basis());
    EXPECT_EQ(dback.shifts(), d.shifts());
  }
  EXPECT_THROW(parse_valuation("FORMS 2\n1, 0 ; 0\n"), InputError);
}
