#include "valvol/subval.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "valvol/errors.hpp"

namespace valvol {

namespace {

// Calls visit(counts) for each multiset of conditions of total degree N.
void for_each_product(const std::vector<Condition>& conds, int N,
                      const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> counts(conds.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == conds.size()) {
      if (left == 0) visit(counts);
      return;
    }
    const int d = conds[k].f.degree();
    for (int e = 0; e * d <= left; ++e) {
      counts[k] = e;
      self(self, k + 1, left - e * d);
    }
    counts[k] = 0;
  };
  rec(rec, 0, N);
}

std::size_t count_products(const std::vector<Condition>& conds, int N) {
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max() / 2;
  std::vector<std::size_t> ways(static_cast<std::size_t>(N) + 1, 0);
  ways[0] = 1;
  for (const auto& c : conds) {
    const int d = c.f.degree();
    for (int s = d; s <= N; ++s)
      ways[static_cast<std::size_t>(s)] = std::min(cap, ways[static_cast<std::size_t>(s)] + ways[static_cast<std::size_t>(s - d)]);
  }
  return ways[static_cast<std::size_t>(N)];
}

SparseVec sparse_coords(const HPoly& f, const MonomialIndex& idx) {
  SparseVec v;
  for (const auto& [e, c] : f.terms()) v.emplace(static_cast<std::uint32_t>(idx.index(e)), c);
  return v;
}

std::shared_ptr<PushForward> build_pushforward(const ConditionSet& C, int N) {
  const auto& conds = C.conditions();
  MonomialIndex idx(C.n(), N);
  std::vector<std::vector<HPoly>> powers(conds.size());
  std::vector<SparseVec> cols;
  std::vector<Value> gammas;
  for_each_product(conds, N, [&](const std::vector<int>& counts) {
    HPoly p = HPoly::constant(C.n() + 1, FieldElem(1));
    Value gamma = Value(0);
    for (std::size_t k = 0; k < conds.size(); ++k) {
      const int e = counts[k];
      if (e == 0) continue;
      auto& pw = powers[k];
      if (pw.empty()) pw.push_back(HPoly::constant(C.n() + 1, FieldElem(1)));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * conds[k].f);
      p = p * pw[static_cast<std::size_t>(e)];
      gamma = gamma + Rational(e) * conds[k].gamma;
    }
    cols.push_back(sparse_coords(p, idx));
    gammas.push_back(gamma);
  });
  return std::make_shared<PushForward>(idx.size(), std::move(cols), std::move(gammas), C.ctx());
}

}  // namespace

ConditionSet::ConditionSet(std::size_t n, std::vector<Condition> conditions, FieldCtx ctx)
    : n_(n), conds_(std::move(conditions)), ctx_(ctx) {
  if (conds_.empty()) throw DomainError("condition set is empty");
  for (const auto& c : conds_) {
    if (c.f.nvars() != n_ + 1) throw DimensionError("condition polynomial has the wrong variable count");
    if (c.f.is_zero()) throw DomainError("condition polynomial is zero");
    if (c.f.degree() < 1) throw DomainError("condition polynomial must have positive degree");
  }
  for (int D = 1; D <= 4 && !generates_; ++D) {
    if (count_products(conds_, D) < monomial_count(n_, D)) continue;
    if (count_products(conds_, D) > 20000) break;
    if (build_pushforward(*this, D)->surjective()) {
      generates_ = true;
      gen_degree_ = D;
    }
  }
}

ConditionSet ConditionSet::coordinate(std::vector<Value> gammas, FieldCtx ctx) {
  if (gammas.empty()) throw DimensionError("need at least one coordinate");
  const std::size_t nv = gammas.size();
  std::vector<Condition> conds;
  for (std::size_t i = 0; i < nv; ++i) conds.push_back({HPoly::variable(nv, i), gammas[i]});
  return ConditionSet(nv - 1, std::move(conds), ctx);
}

SubvalEngine::SubvalEngine(ConditionSet conds, TruncationBudget budget)
    : conds_(std::move(conds)), budget_(std::move(budget)) {
  if (budget_.n_max < 1) throw InputError("truncation budget: n_max must be at least 1");
  if (budget_.schedule.empty()) throw InputError("truncation budget: empty schedule");
  std::sort(budget_.schedule.begin(), budget_.schedule.end());
  if (budget_.schedule.front() < 1) throw InputError("truncation budget: powers must be positive");
  if (!conds_.generates())
    throw DomainError("conditions do not generate the polynomial ring in degrees up to 4");
}

std::size_t SubvalEngine::product_count(int N) const { return count_products(conds_.conditions(), N); }

std::shared_ptr<const PushForward> SubvalEngine::pushforward(int N) const {
  if (budget_.degree_cap && N > *budget_.degree_cap) return nullptr;
  if (product_count(N) > budget_.max_products) return nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(N);
    if (it != cache_.end()) return it->second;
  }
  std::shared_ptr<const PushForward> pf = build_pushforward(conds_, N);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(N, std::move(pf)).first->second;
}

std::optional<Value> SubvalEngine::power_value(const HPoly& g, int n) const {
  if (g.nvars() != conds_.n() + 1) throw DimensionError("polynomial has the wrong variable count");
  if (n < 1) throw DomainError("power must be positive");
  if (g.is_zero()) return Value::inf();
  const int N = g.degree() * n;
  auto pf = pushforward(N);
  if (!pf) throw ScaleError("power " + std::to_string(n) + " exceeds the truncation budget");
  MonomialIndex idx(conds_.n(), N);
  return pf->value(sparse_coords(g.pow(static_cast<unsigned>(n)), idx));
}

GeneratedValue SubvalEngine::generated(const HPoly& g) const {
  GeneratedValue out;
  if (g.nvars() != conds_.n() + 1) throw DimensionError("polynomial has the wrong variable count");
  if (g.is_zero()) {
    out.value = Value::inf();
    return out;
  }
  bool found = false;
  for (int n : budget_.schedule) {
    if (n > budget_.n_max) break;
    std::optional<Value> q;
    try {
      q = power_value(g, n);
    } catch (const ScaleError&) {
      out.skipped.push_back(n);
      continue;
    }
    if (q) q = *q / Rational(n);
    out.trace.emplace_back(n, q);
    if (q && (!found || out.value < *q)) {
      out.value = *q;
      out.n = n;
      found = true;
    }
  }
  if (!found) throw DomainError("no scheduled power of " + g.str() + " is a combination of condition products");
  return out;
}

DiagonalVal SubvalEngine::graded_piece(int m) const {
  if (m < 0) throw DomainError("negative degree");
  auto pf = pushforward(m);
  if (!pf) throw ScaleError("graded piece of degree " + std::to_string(m) + " exceeds the truncation budget");
  if (!pf->surjective())
    throw DomainError("condition products of degree " + std::to_string(m) + " do not span the graded piece");
  return pf->image_valuation();
}

Value generated_value(const ConditionSet& C, const HPoly& g, const TruncationBudget& B) {
  return SubvalEngine(C, B).value(g);
}

DiagonalVal graded_piece(const ConditionSet& C, int m, const TruncationBudget& B) {
  return SubvalEngine(C, B).graded_piece(m);
}

Value homogeneous_value(const SubvalEngine& u, std::span<const HPoly> pieces) {
  Value best = Value::inf();
  for (const auto& f : pieces) best = vmin(best, u.value(f));
  return best;
}

namespace {

// sup over the a-basis of (a shift) - b(value of that basis vector), with the
// conventions INF - INF = 0 and finite - INF ignored.
Value one_sided(const DiagonalVal& a, const DiagonalVal& b) {
  Value worst = Value(0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Value& c = a.shifts()[i];
    Value w = b.eval(a.basis_vector(i));
    if (c.is_inf()) {
      if (w.is_finite()) return Value::inf();
      continue;
    }
    if (w.is_inf()) continue;
    worst = vmax(worst, c - w);
  }
  return worst;
}

}  // namespace

Value graded_distance(const DiagonalVal& a, const DiagonalVal& b) {
  if (a.dim() != b.dim()) throw DimensionError("graded pieces of different dimension");
  return vmax(one_sided(a, b), one_sided(b, a));
}

Value subval_distance(const SubvalEngine& u, const SubvalEngine& w, int m_max) {
  if (u.conditions().n() != w.conditions().n()) throw DimensionError("sub-valuations on different rings");
  Value d = Value(0);
  for (int m = 1; m <= m_max; ++m)
    d = vmax(d, graded_distance(u.graded_piece(m), w.graded_piece(m)) / Rational(m));
  return d;
}

namespace {

HPoly random_poly(GenericSource& src, std::size_t n, int degree) {
  for (;;) {
    HPoly f(n + 1, degree);
    for (const auto& e : monomial_exponents(n, degree)) {
      if (src.rng()() % 2 == 0) continue;
      const long k = static_cast<long>(src.rng()() % 3) - 1;
      f.add_term(e, FieldElem(src.random_rational()) * FieldElem::t_pow(Rational(k)));
    }
    if (!f.is_zero()) return f;
  }
}

}  // namespace

AxiomReport check_subval_axioms(const SubvalEngine& u, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  GenericSource src(FieldCtx::gauss(seed), 0x5eed);
  const std::size_t n = u.conditions().n();
  auto q = [&](const HPoly& f, int k) -> std::optional<std::optional<Value>> {
    try {
      return u.power_value(f, k);
    } catch (const ScaleError&) {
      return std::nullopt;
    }
  };
  auto fail = [&](const std::string& what, const HPoly& a, const HPoly& b) {
    report.violations.push_back(what + " for a = " + a.str() + ", b = " + b.str());
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const int da = 1 + static_cast<int>(src.rng()() % 2);
    const int db = 1 + static_cast<int>(src.rng()() % 2);
    HPoly a = random_poly(src, n, da), b = random_poly(src, n, db), b2 = random_poly(src, n, da);
    for (int k : {1, 2}) {
      auto qa = q(a, k), qb = q(b, k), qab = q(a * b, k);
      if (!qa || !qb || !qab) continue;
      ++report.checked;
      if (*qa && *qb) {
        if (!*qab) {
          fail("product lost representability at n = " + std::to_string(k), a, b);
        } else if (**qab < **qa + **qb) {
          fail("sub-multiplicativity failed at n = " + std::to_string(k), a, b);
        }
      }
    }
    if (auto qa = q(a, 1), qc = q(b2, 1), qs = q(a + b2, 1); qa && qc && qs && *qa && *qc && *qs) {
      ++report.checked;
      if (**qs < vmin(**qa, **qc)) fail("ultrametric inequality failed", a, b2);
    }
    if (auto qsq = q(a * a, 1), q2 = q(a, 2); qsq && q2) {
      ++report.checked;
      if (qsq->has_value() != q2->has_value() || (qsq->has_value() && !(**qsq == **q2)))
        fail("power identity Q_1(a^2) = Q_2(a) failed", a, a);
    }
    if (auto q1 = q(a, 1), q2 = q(a, 2); q1 && q2 && *q1) {
      ++report.checked;
      if (!*q2 || **q2 < Rational(2) * **q1) fail("divisibility monotonicity failed", a, a);
    }
  }
  return report;
}

}  // namespace valvol
