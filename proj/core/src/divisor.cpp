#include "valvol/divisor.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include "valvol/errors.hpp"

namespace valvol {

Variety Variety::hypersurface(std::size_t n, HPoly g) {
  if (g.nvars() != n + 1) throw DimensionError("hypersurface equation has the wrong variable count");
  if (g.is_zero() || g.degree() < 1) throw DomainError("hypersurface equation must be a nonconstant polynomial");
  if (n < 1) throw DomainError("hypersurface needs n >= 1");
  return Variety{n, std::move(g)};
}

std::size_t Variety::graded_dim(int m) const {
  if (!g) return monomial_count(n, m);
  return monomial_count(n, m) - monomial_count(n, m - g->degree());
}

bool Variety::contains(const ProjPoint& xi) const {
  if (xi.size() != n + 1) return false;
  return !g || g->eval(xi.coords()).is_zero();
}

std::string Variety::str() const {
  return g ? "V(" + g->str() + ") in P^" + std::to_string(n) : "P^" + std::to_string(n);
}

namespace {

std::string point_str(const ProjPoint& xi) {
  std::string s = "[";
  for (std::size_t i = 0; i < xi.size(); ++i) s += (i ? " : " : "") + xi[i].str();
  return s + "]";
}

// Index j with g = X_j h + r, h and r free of X_j; nullopt if none.
std::optional<std::size_t> linear_variable(const HPoly& g) {
  for (std::size_t j = 0; j < g.nvars(); ++j) {
    bool linear = true, present = false;
    for (const auto& [e, c] : g.terms()) {
      if (e[j] > 1) linear = false;
      if (e[j] == 1) present = true;
    }
    if (linear && present) return j;
  }
  return std::nullopt;
}

// Completes a point of P^n by solving g = 0 for coordinate j (ignored input).
std::optional<ProjPoint> solve_on(const HPoly& g, std::size_t j, Vec x) {
  x[j] = FieldElem(0);
  FieldElem r = g.eval(x);
  x[j] = FieldElem(1);
  FieldElem h = g.eval(x) - r;
  if (h.is_zero()) return std::nullopt;
  x[j] = -(r / h);
  if (is_zero(x)) return std::nullopt;
  return ProjPoint(std::move(x));
}

}  // namespace

Divisor::Divisor(Variety W, std::vector<DivisorTerm> terms, FieldCtx ctx)
    : W_(std::move(W)), terms_(std::move(terms)), ctx_(ctx) {
  if (terms_.empty()) throw DomainError("divisor needs at least one term");
  for (const auto& t : terms_) {
    if (t.f.nvars() != W_.n + 1) throw DimensionError("divisor term has the wrong variable count");
    if (t.f.degree() < 1) throw DomainError("divisor term must have positive degree");
    if (t.c.is_inf()) throw DomainError("divisor shifts must be finite");
    bool vanishes = t.f.is_zero() || (W_.g && t.f.divide(*W_.g).has_value());
    if (vanishes) {
      std::string witness;
      if (W_.g) {
        auto pts = sample_points(Divisor(Variety::projective(W_.n), {{HPoly::variable(W_.n + 1, 0), 0}}, ctx_),
                                 SamplingPlan{0, 0, true});
        for (const auto& p : pts)
          if (auto j = linear_variable(*W_.g); j)
            if (auto q = solve_on(*W_.g, *j, p.coords()); q) {
              witness = point_str(*q);
              break;
            }
      } else {
        witness = point_str(ProjPoint(unit_vector(W_.n + 1, 0)));
      }
      throw DomainError("divisor term " + t.f.str() + " vanishes identically on " + W_.str() +
                        (witness.empty() ? "" : "; e.g. at " + witness));
    }
    degree_ = std::lcm(degree_, t.f.degree());
  }
}

Divisor Divisor::toric(std::vector<Value> c, FieldCtx ctx) {
  if (c.empty()) throw DimensionError("toric divisor needs shifts");
  const std::size_t nv = c.size();
  std::vector<DivisorTerm> terms;
  for (std::size_t i = 0; i < nv; ++i) terms.push_back({HPoly::variable(nv, i), c[i]});
  return Divisor(Variety::projective(nv - 1), std::move(terms), ctx);
}

Divisor Divisor::zero(std::size_t n, FieldCtx ctx) { return toric(std::vector<Value>(n + 1, Value(0)), ctx); }

std::optional<std::vector<Value>> Divisor::toric_shifts() const {
  if (!W_.is_projective_space()) return std::nullopt;
  std::vector<std::optional<Value>> eff(W_.n + 1);
  for (const auto& t : terms_) {
    if (!t.f.is_monomial()) return std::nullopt;
    const Exponent& e = t.f.leading_exponent();
    std::size_t var = e.size(), used = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) var = i, ++used;
    if (used != 1) return std::nullopt;
    Value c = t.c + ctx_.val(t.f.leading_coeff()) / Rational(t.f.degree());
    eff[var] = eff[var] ? vmin(*eff[var], c) : c;
  }
  std::vector<Value> out;
  for (const auto& c : eff) {
    if (!c) return std::nullopt;
    out.push_back(*c);
  }
  return out;
}

Divisor Divisor::translated(const Value& a) const {
  std::vector<DivisorTerm> terms = terms_;
  for (auto& t : terms) t.c = t.c + a;
  return Divisor(W_, std::move(terms), ctx_);
}

ConditionSet Divisor::dual_conditions() const {
  std::vector<Condition> conds;
  for (const auto& t : terms_) conds.push_back({t.f, -(Rational(t.f.degree()) * t.c)});
  if (W_.g) conds.push_back({*W_.g, Value::inf()});
  return ConditionSet(W_.n, std::move(conds), ctx_);
}

Value divisor_eval(const Divisor& eta, const ProjPoint& xi) {
  if (xi.size() != eta.n() + 1) throw DimensionError("point arity differs from the ambient space");
  if (!eta.variety().contains(xi)) throw DomainError("point " + point_str(xi) + " is not on " + eta.variety().str());
  Value best = Value::inf();
  for (const auto& t : eta.terms()) best = vmin(best, hat_eval(t.f, xi, eta.ctx()) + t.c);
  if (best.is_inf()) throw DomainError("every divisor term vanishes at " + point_str(xi));
  return best;
}

namespace {

std::vector<Rational> candidate_values(const Divisor& eta) {
  std::vector<Rational> eff;
  for (const auto& t : eta.terms()) {
    Value v = t.c + t.f.vtilde(eta.ctx()) / Rational(t.f.degree());
    eff.push_back(v.rational());
  }
  const Rational top = *std::max_element(eff.begin(), eff.end());
  std::set<Rational> primary{Rational(0)}, secondary;
  for (const auto& e : eff) primary.insert(top - e);
  for (const auto& a : eff)
    for (const auto& b : eff) secondary.insert(abs(Rational(a - b)));
  std::vector<Rational> out(primary.begin(), primary.end());
  for (const auto& s : secondary) {
    if (out.size() >= 6) break;
    if (!primary.count(s)) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<ProjPoint> sample_points(const Divisor& eta, const SamplingPlan& plan) {
  const std::size_t nv = eta.n() + 1;
  std::optional<std::size_t> solve;
  if (eta.variety().g) {
    solve = linear_variable(*eta.variety().g);
    if (!solve) throw DomainError("cannot sample points on " + eta.variety().str() + ": equation is linear in no variable");
  }
  const std::vector<Rational> S = candidate_values(eta);
  std::vector<ProjPoint> out;
  auto emit = [&](Vec x) {
    if (solve) {
      if (auto p = solve_on(*eta.variety().g, *solve, std::move(x)); p) out.push_back(std::move(*p));
    } else if (!is_zero(x)) {
      out.emplace_back(std::move(x));
    }
  };
  if (plan.corners) {
    // Choices per free coordinate: 0 or t^s for s in S.
    const std::size_t choices = S.size() + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < nv; ++i) total = std::min<std::size_t>(total * choices, 1u << 16);
    const std::size_t limit = std::min<std::size_t>(total, 4096);
    for (std::size_t code = 0; code < limit; ++code) {
      Vec x(nv);
      std::size_t c = code;
      for (std::size_t i = 0; i < nv; ++i) {
        const std::size_t k = c % choices;
        c /= choices;
        if (solve && i == *solve) continue;
        x[i] = k == S.size() ? FieldElem(0) : FieldElem::t_pow(S[k]);
      }
      emit(std::move(x));
    }
  }
  GenericSource src(FieldCtx::gauss(plan.seed), 0xD1);
  for (std::size_t p = 0, tries = 0; p < plan.random_points && tries < 20 * plan.random_points + 20; ++tries) {
    Vec x(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (src.rng()() % 8 == 0) continue;
      Rational w = src.rng()() % 2 ? S[src.rng()() % S.size()] : abs(src.random_in(2, 6));
      x[i] = FieldElem(src.random_rational()) * FieldElem::t_pow(w);
    }
    const std::size_t before = out.size();
    emit(std::move(x));
    if (out.size() > before) ++p;
  }
  return out;
}

Value dual_upper(const Divisor& eta, const HPoly& g, std::span<const ProjPoint> points) {
  if (points.empty()) throw InputError("dual_upper: empty sampling plan");
  if (g.nvars() != eta.n() + 1) throw DimensionError("polynomial has the wrong variable count");
  Value best = Value::inf();
  const Rational m(g.degree());
  for (const auto& xi : points) {
    Value vf = vf_eval(g, xi, eta.ctx());
    if (vf.is_inf()) continue;
    Value e = divisor_eval(eta, xi);
    // vf - m*e, written to stay within Q for negative e.
    best = vmin(best, Value(vf.rational() - m * e.rational()));
  }
  return best;
}

Value dual_upper(const Divisor& eta, const HPoly& g, const SamplingPlan& plan) {
  auto pts = sample_points(eta, plan);
  return dual_upper(eta, g, pts);
}

Value dual_lower(const Divisor& eta, const HPoly& g, const TruncationBudget& B) {
  return SubvalEngine(eta.dual_conditions(), B).value(g);
}

SandwichResult dual_sandwich(const Divisor& eta, const SubvalEngine& lower_engine, const HPoly& g,
                             std::span<const ProjPoint> points) {
  auto lower = std::async(std::launch::async, [&] { return lower_engine.generated(g); });
  Value upper = dual_upper(eta, g, points);
  GeneratedValue lo = lower.get();
  if (upper < lo.value)
    throw Error("dual sandwich inverted for " + g.str() + ": lower " + lo.value.str() + " > upper " + upper.str());
  return SandwichResult{lo.value, upper, lo.n, points.size()};
}

Value toric_dual(std::span<const Value> c, std::span<const int> alpha) {
  if (c.size() != alpha.size() || c.empty()) throw DimensionError("toric_dual: shift and exponent lengths differ");
  Value top = c[0];
  for (const auto& x : c) {
    if (x.is_inf()) throw DomainError("toric_dual: shifts must be finite");
    top = vmax(top, x);
  }
  if (!(top == Value(0))) throw DomainError("toric_dual: shifts must be normalized to max 0");
  int m = 0;
  for (int a : alpha) {
    if (a < 0) throw DomainError("toric_dual: negative exponent");
    m += a;
  }
  const std::size_t k = c.size();
  if (k > 20) throw ScaleError("toric_dual: too many coordinates");
  std::optional<Rational> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Rational> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = (mask >> i) & 1u ? Rational(-c[i].rational()) : Rational(0);
    if (*std::min_element(w.begin(), w.end()) != 0) continue;
    Rational low = w[0] + c[0].rational(), obj = 0;
    for (std::size_t i = 0; i < k; ++i) {
      low = std::min(low, Rational(w[i] + c[i].rational()));
      obj += alpha[i] * w[i];
    }
    obj -= m * low;
    if (!best || obj < *best) best = obj;
  }
  return *best;
}

DoubleDualResult double_dual_check(const Divisor& eta, const ProjPoint& xi, const DoubleDualBudget& B) {
  DoubleDualResult out;
  out.eta = divisor_eval(eta, xi);
  SubvalEngine engine(eta.dual_conditions(), B.truncation);
  std::vector<HPoly> probes;
  for (int d = 1; d <= B.probe_degree; ++d)
    for (auto& f : monomial_basis(eta.n(), d)) probes.push_back(std::move(f));
  const auto& terms = eta.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].f.degree() <= B.probe_degree) probes.push_back(terms[k].f);
    for (std::size_t l = k; l < terms.size(); ++l)
      if (terms[k].f.degree() + terms[l].f.degree() <= B.probe_degree) probes.push_back(terms[k].f * terms[l].f);
  }
  out.probed = Value::inf();
  for (const auto& f : probes) {
    Value h = hat_eval(f, xi, eta.ctx());
    if (h.is_inf()) continue;
    Value lo;
    try {
      lo = engine.value(f);
    } catch (const DomainError&) {
      continue;
    }
    if (lo.is_inf()) continue;
    ++out.probes;
    out.probed = vmin(out.probed, Value(h.rational() - lo.rational() / f.degree()));
  }
  if (out.probed.is_inf()) throw DomainError("double_dual_check: no usable probe polynomial");
  out.gap = out.probed - out.eta;
  if (out.gap < Value(0)) throw Error("double_dual_check: probed value below eta at " + point_str(xi));
  return out;
}

std::vector<Value> restrict_dual(const Divisor& eta, const std::optional<HPoly>& g, const HPoly& f,
                                 std::span<const int> powers, const TruncationBudget& B) {
  if (!eta.variety().is_projective_space())
    throw DomainError("restrict_dual: the ideal of W must be principal in the ring of eta's variety");
  if (g && g->nvars() != eta.n() + 1) throw DimensionError("hypersurface equation has the wrong variable count");
  SubvalEngine engine(eta.dual_conditions(), B);
  std::vector<Value> out;
  for (int m : powers) {
    if (m < 1) throw DomainError("restrict_dual: powers must be positive");
    const int N = m * f.degree();
    DiagonalVal piece = engine.graded_piece(N);
    MonomialIndex idx(eta.n(), N);
    Vec target = idx.coords(f.pow(static_cast<unsigned>(m)));
    Value q;
    if (g && N >= g->degree()) {
      std::vector<Vec> F;
      for (auto& mono : monomial_basis(eta.n(), N - g->degree())) F.push_back(idx.coords(mono * *g));
      q = quotient_value(piece, F, target);
    } else {
      q = piece.eval(target);
    }
    out.push_back(q / Rational(m));
  }
  return out;
}

SupResult sup_eta(const Divisor& eta, const SamplingPlan& plan) {
  if (auto c = eta.toric_shifts(); c) return SupResult{*std::max_element(c->begin(), c->end()), true};
  Value best;
  bool any = false;
  for (const auto& xi : sample_points(eta, plan)) {
    Value e;
    try {
      e = divisor_eval(eta, xi);
    } catch (const DomainError&) {
      continue;
    }
    if (!any || best < e) best = e;
    any = true;
  }
  if (!any) throw DomainError("sup_eta: no sample point where eta is defined");
  return SupResult{best, false};
}

SupResult width_bound(const Divisor& eta, const SamplingPlan& plan) {
  SupResult s = sup_eta(eta, plan);
  Value low = Value::inf();
  for (const auto& t : eta.terms()) low = vmin(low, t.c + t.f.vtilde(eta.ctx()) / Rational(t.f.degree()));
  return SupResult{s.value - low, s.exact};
}

HPoly representative(const Divisor& eta, GenericSource& src) {
  const int D = eta.degree();
  HPoly f(eta.n() + 1, D);
  for (const auto& t : eta.terms()) {
    const int k = D / t.f.degree();
    f = f + t.f.pow(static_cast<unsigned>(k)).scaled(src.fresh_generic(Rational(D) * t.c));
  }
  return f;
}

}  // namespace valvol
