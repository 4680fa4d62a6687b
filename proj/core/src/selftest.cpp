#include "valvol/selftest.hpp"

#include <functional>
#include <ostream>
#include <string>

#include "valvol/chow.hpp"
#include "valvol/divisor.hpp"
#include "valvol/valspace.hpp"

namespace valvol {

namespace {

FieldElem random_elem(GenericSource& src) {
  FieldElem x;
  const int terms = 1 + static_cast<int>(src.rng()() % 3);
  for (int k = 0; k < terms; ++k)
    x += FieldElem(src.random_rational()) * FieldElem::t_pow(src.random_in(3, 2));
  if (src.rng()() % 3 == 0) x = x / (FieldElem(1) + FieldElem::t_pow(Rational(1 + src.rng()() % 3)));
  return x;
}

struct Suite {
  std::string name;
  std::size_t checks = 0;
  std::string failure;
};

}  // namespace

bool run_selftest(std::ostream& out, std::uint64_t seed) {
  std::vector<std::pair<std::string, std::function<void(Suite&)>>> suites;

  suites.emplace_back("field axioms", [seed](Suite& s) {
    GenericSource src(FieldCtx::gauss(seed), 1);
    for (int i = 0; i < 200; ++i) {
      FieldElem x = random_elem(src), y = random_elem(src);
      ++s.checks;
      if (!(val(x * y) == val(x) + val(y))) s.failure = "multiplicativity: " + x.str() + ", " + y.str();
      if (val(x + y) < vmin(val(x), val(y))) s.failure = "ultrametric: " + x.str() + ", " + y.str();
    }
  });

  suites.emplace_back("orthogonalization and volume", [seed](Suite& s) {
    GenericSource src(FieldCtx::gauss(seed), 2);
    for (int i = 0; i < 30; ++i) {
      const std::size_t m = 2 + src.rng()() % 2;
      std::vector<Vec> forms;
      std::vector<Value> shifts;
      for (std::size_t j = 0; j < m + 1; ++j) {
        Vec row(m);
        for (auto& e : row) e = random_elem(src);
        forms.push_back(row);
        shifts.push_back(Value(src.random_in(2, 2)));
      }
      MinFormsVal u(m, forms, shifts);
      Orthogonalization o;
      try {
        o = orthogonalize(u);
      } catch (const NonReducedError&) {
        continue;
      }
      for (int k = 0; k < 5; ++k) {
        Vec x(m);
        for (auto& e : x) e = random_elem(src);
        ++s.checks;
        if (!(u.eval(x) == o.diag.eval(x))) s.failure = "orthogonalization certificate";
      }
      Matrix a(m, m);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = r; c < m; ++c) a(r, c) = c == r ? FieldElem::t_pow(src.random_in(2, 1)) : random_elem(src);
      std::vector<Vec> std_basis, changed;
      for (std::size_t c = 0; c < m; ++c) std_basis.push_back(unit_vector(m, c));
      for (std::size_t c = 0; c < m; ++c) changed.push_back(a.column(c));
      ++s.checks;
      if (!(volume(o.diag, changed) == volume(o.diag, std_basis) + val(determinant(a))))
        s.failure = "volume basis change";
    }
  });

  suites.emplace_back("sub-valuation axioms", [seed](Suite& s) {
    SubvalEngine u(ConditionSet::coordinate({Value(1), Value(0), Value(Rational(1, 2))}), TruncationBudget{});
    AxiomReport r = check_subval_axioms(u, 20, seed);
    s.checks = r.checked;
    if (!r.ok()) s.failure = r.violations.front();
  });

  suites.emplace_back("toric duality", [](Suite& s) {
    for (auto c : {std::vector<Value>{-1, 0}, std::vector<Value>{-1, 0, 0}}) {
      Divisor eta = Divisor::toric(c);
      auto pts = sample_points(eta, SamplingPlan{50, 0, true});
      SubvalEngine lower(eta.dual_conditions(), TruncationBudget{});
      for (int m = 1; m <= 3; ++m)
        for (const auto& e : monomial_exponents(eta.n(), m)) {
          SandwichResult r = dual_sandwich(eta, lower, HPoly::monomial(e), pts);
          Value exact = toric_dual(c, e);
          ++s.checks;
          if (!(r.lower == exact) || !(r.upper == exact)) s.failure = "sandwich not closed";
        }
    }
  });

  suites.emplace_back("intersection oracles", [seed](Suite& s) {
    GenericSource src(FieldCtx::gauss(seed), 5);
    for (int i = 0; i < 6; ++i) {
      std::vector<Value> c;
      const std::size_t nv = 2 + i % 2;
      for (std::size_t k = 0; k < nv; ++k) c.push_back(Value(src.random_in(2, 3)));
      IntersectionResult r = intersection_number(Divisor::toric(c), Variety::projective(nv - 1), seed);
      ++s.checks;
      if (!(r.value == toric_intersection(c)) || !r.stable) s.failure = "toric intersection";
    }
  });

  bool all = true;
  for (auto& [name, fn] : suites) {
    Suite s;
    s.name = name;
    try {
      fn(s);
    } catch (const std::exception& e) {
      s.failure = std::string("exception: ") + e.what();
    }
    out << "selftest " << name << ": " << (s.failure.empty() ? "ok" : "FAIL (" + s.failure + ")") << " ["
        << s.checks << " checks]\n";
    all = all && s.failure.empty();
  }
  return all;
}

}  // namespace valvol
