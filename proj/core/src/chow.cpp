#include "valvol/chow.hpp"

#include <algorithm>
#include <numeric>

#include "valvol/errors.hpp"

namespace valvol {

namespace {

struct Macaulay {
  Matrix m;
  std::vector<std::size_t> extraneous;  // indices of non-reduced monomials
};

Macaulay macaulay_matrix(std::span<const HPoly> F) {
  const std::size_t n = F.size() - 1;
  int delta = 1;
  for (const auto& f : F) delta += f.degree() - 1;
  MonomialIndex idx(n, delta);
  Macaulay out{Matrix(idx.size(), idx.size()), {}};
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const Exponent& a = idx[r];
    std::size_t first = F.size(), count = 0;
    for (std::size_t i = 0; i < F.size(); ++i)
      if (a[i] >= F[i].degree()) {
        if (first == F.size()) first = i;
        ++count;
      }
    if (count > 1) out.extraneous.push_back(r);
    Exponent q = a;
    q[first] -= F[first].degree();
    for (const auto& [e, c] : F[first].terms()) {
      Exponent s(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] + q[i];
      out.m(r, idx.index(s)) = c;
    }
  }
  return out;
}

FieldElem macaulay_quotient(std::span<const HPoly> F, bool* ok) {
  Macaulay mac = macaulay_matrix(F);
  FieldElem den(1);
  if (!mac.extraneous.empty()) {
    const std::size_t k = mac.extraneous.size();
    Matrix e(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) e(i, j) = mac.m(mac.extraneous[i], mac.extraneous[j]);
    den = determinant(std::move(e));
    if (den.is_zero()) {
      *ok = false;
      return FieldElem(0);
    }
  }
  *ok = true;
  FieldElem num = determinant(std::move(mac.m));
  return num / den;
}

// f(A x) for a rational matrix A.
HPoly substitute(const HPoly& f, const std::vector<std::vector<Rational>>& a) {
  const std::size_t nv = f.nvars();
  std::vector<HPoly> images;
  for (std::size_t i = 0; i < nv; ++i) {
    HPoly y(nv, 1);
    for (std::size_t j = 0; j < nv; ++j)
      if (a[i][j] != 0) y = y + HPoly::variable(nv, j).scaled(FieldElem(a[i][j]));
    images.push_back(std::move(y));
  }
  HPoly out(nv, f.degree());
  for (const auto& [e, c] : f.terms()) {
    HPoly term = HPoly::constant(nv, c);
    for (std::size_t i = 0; i < nv; ++i)
      if (e[i] > 0) term = term * images[i].pow(static_cast<unsigned>(e[i]));
    out = out + term;
  }
  return out;
}

}  // namespace

FieldElem resultant(std::span<const HPoly> F) {
  if (F.empty()) throw DimensionError("resultant of an empty family");
  const std::size_t nv = F.size();
  for (const auto& f : F) {
    if (f.nvars() != nv) throw DimensionError("resultant needs n+1 forms in n+1 variables");
    if (f.degree() < 1) throw DomainError("resultant needs nonconstant forms");
  }
  for (const auto& f : F)
    if (f.is_zero()) return FieldElem(0);
  bool ok = false;
  FieldElem r = macaulay_quotient(F, &ok);
  if (ok) return r;
  // Res(F o A) = det(A)^(prod d_i) Res(F) = Res(F) for det A = 1.
  GenericSource src(FieldCtx::gauss(0xC0FFEE), 0);
  for (int attempt = 0; attempt < 32; ++attempt) {
    // A = L U with unit triangular factors, so det A = 1.
    std::vector<std::vector<Rational>> l(nv, std::vector<Rational>(nv, 0)), u = l, a = l;
    for (std::size_t i = 0; i < nv; ++i) {
      l[i][i] = u[i][i] = 1;
      for (std::size_t j = i + 1; j < nv; ++j) {
        u[i][j] = src.random_in(3 + attempt, 1);
        l[j][i] = src.random_in(3 + attempt, 1);
      }
    }
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t k = 0; k < nv; ++k) a[i][j] += l[i][k] * u[k][j];
    std::vector<HPoly> G;
    for (const auto& f : F) G.push_back(substitute(f, a));
    r = macaulay_quotient(G, &ok);
    if (ok) return r;
  }
  throw Error("resultant: no admissible coordinate change found");
}

HPoly normalize_equation(const HPoly& g, const FieldCtx& ctx) {
  if (g.is_zero()) throw DomainError("cannot normalize the zero polynomial");
  const Value target = g.vtilde(ctx);
  for (const auto& [e, c] : g.terms())
    if (ctx.val(c) == target) return g.scaled(c.inv());
  return g;
}

Value wedge_valuation(std::span<const HPoly> F, const ChowSpec& W, const FieldCtx& ctx) {
  if (F.size() != W.dim() + 1) throw DimensionError("wedge needs dim W + 1 forms");
  std::vector<HPoly> all(F.begin(), F.end());
  Rational norm = W.degree();
  for (const auto& f : F) norm *= f.degree();
  if (W.g) all.push_back(normalize_equation(*W.g, ctx));
  return ctx.val(resultant(all)) / norm;
}

std::vector<std::vector<HPoly>> probe_families(std::size_t n, std::size_t count, const ProbePlan& plan) {
  const std::size_t nv = n + 1;
  std::vector<std::vector<HPoly>> out;
  // Coordinate families: all count-subsets of the variables.
  std::vector<int> pick(nv, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(count, nv)), 1);
  if (count <= nv) {
    do {
      std::vector<HPoly> fam;
      for (std::size_t i = 0; i < nv; ++i)
        if (pick[i]) fam.push_back(HPoly::variable(nv, i));
      out.push_back(std::move(fam));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  // Coordinate differences replacing the last form.
  for (const auto& base : std::vector<std::vector<HPoly>>(out)) {
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i + 1; j < nv; ++j) {
        auto fam = base;
        fam.back() = HPoly::variable(nv, i) - HPoly::variable(nv, j);
        out.push_back(std::move(fam));
      }
  }
  GenericSource src(FieldCtx::gauss(plan.seed), 0xC4);
  for (std::size_t k = 0; k < plan.random_families; ++k) {
    std::vector<HPoly> fam;
    for (std::size_t i = 0; i < count; ++i) {
      const int d = 1 + static_cast<int>(src.rng()() % static_cast<unsigned>(std::max(1, plan.max_degree)));
      HPoly f(nv, d);
      for (const auto& e : monomial_exponents(n, d)) {
        const long w = static_cast<long>(src.rng()() % 3);
        f.add_term(e, FieldElem(src.random_rational()) * FieldElem::t_pow(Rational(w)));
      }
      fam.push_back(std::move(f));
    }
    out.push_back(std::move(fam));
  }
  return out;
}

Value chow_distance(const ChowSpec& W1, const ChowSpec& W2, const ProbePlan& plan) {
  if (W1.n != W2.n || W1.dim() != W2.dim()) throw DimensionError("chow_distance: cycles of different dimension");
  Value d = Value(0);
  for (const auto& fam : probe_families(W1.n, W1.dim() + 1, plan))
    d = vmax(d, vdist(wedge_valuation(fam, W1), wedge_valuation(fam, W2)));
  return d;
}

namespace {

constexpr std::uint32_t kCopyStride = 1u << 16;

std::pair<Value, bool> intersection_once(const Divisor& eta, const ChowSpec& W, std::uint64_t seed,
                                         Rational* norm) {
  const std::size_t k = W.dim() + 1;
  std::vector<HPoly> F;
  for (std::size_t j = 0; j < k; ++j) {
    GenericSource src(FieldCtx{eta.ctx().kind, eta.ctx().prime, seed}, j,
                      kGenericVarBase + static_cast<std::uint32_t>(j) * kCopyStride);
    F.push_back(representative(eta, src));
  }
  *norm = W.degree();
  for (const auto& f : F) *norm *= f.degree();
  if (W.g) F.push_back(normalize_equation(*W.g, eta.ctx()));

  int delta = 1;
  for (const auto& f : F) delta += f.degree() - 1;
  const std::size_t size = monomial_count(W.n, delta);
  bool specialized = false;
  if (size > 4) {
    std::map<std::uint32_t, Rational> values;
    GenericSource pick(FieldCtx::gauss(seed), 0x5bec);
    for (const auto& f : F)
      for (const auto& [e, c] : f.terms()) {
        for (auto v : c.num().s_vars())
          if (v >= kGenericVarBase && !values.count(v)) values.emplace(v, pick.random_rational());
        for (auto v : c.den().s_vars())
          if (v >= kGenericVarBase && !values.count(v)) values.emplace(v, pick.random_rational());
      }
    for (auto& f : F) f = f.specialize(values);
    specialized = true;
  }
  return {eta.ctx().val(resultant(F)) / *norm, specialized};
}

}  // namespace

IntersectionResult intersection_number(const Divisor& eta, const ChowSpec& W, std::uint64_t seed) {
  if (eta.n() != W.n) throw DimensionError("intersection_number: divisor and cycle in different spaces");
  if (!eta.variety().is_projective_space()) {
    const auto& g = *eta.variety().g;
    if (!W.g || !(normalize_equation(g) == normalize_equation(*W.g)))
      throw DomainError("intersection_number: divisor is not defined on the cycle's ambient space");
  }
  if (W.n > 3 || eta.degree() > 4 || W.degree() > 3)
    throw ScaleError("intersection_number: beyond desk scale (n <= 3, degree <= 4, deg W <= 3)");
  IntersectionResult out;
  out.seed = seed;
  auto [v1, spec1] = intersection_once(eta, W, seed, &out.normalization);
  Rational norm2;
  auto [v2, spec2] = intersection_once(eta, W, mix_seed(seed, 0x2ee5), &norm2);
  out.value = v1;
  out.stable = v1 == v2;
  out.specialized = spec1 || spec2;
  return out;
}

Value toric_intersection(std::span<const Value> c) {
  Value s = Value(0);
  for (const auto& x : c) s = s + x;
  return s;
}

}  // namespace valvol
