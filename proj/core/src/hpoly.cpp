#include "valvol/hpoly.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

#include "valvol/errors.hpp"

namespace valvol {

bool DeglexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return b < a;
}

HPoly::HPoly(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars == 0) throw DimensionError("polynomial needs at least one variable");
  if (degree < 0) throw DomainError("negative degree");
}

HPoly HPoly::monomial(const Exponent& e, const FieldElem& c) {
  HPoly f(e.size(), std::accumulate(e.begin(), e.end(), 0));
  f.add_term(e, c);
  return f;
}

HPoly HPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DimensionError("variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

HPoly HPoly::constant(std::size_t nvars, const FieldElem& c) {
  HPoly f(nvars, 0);
  f.add_term(Exponent(nvars, 0), c);
  return f;
}

FieldElem HPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem(0) : it->second;
}

void HPoly::add_term(const Exponent& e, const FieldElem& c) {
  if (e.size() != nvars_) throw DimensionError("exponent arity mismatch");
  int d = 0;
  for (int k : e) {
    if (k < 0) throw DomainError("negative exponent");
    d += k;
  }
  if (d != degree_) throw DimensionError("term degree differs from polynomial degree");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const Exponent& HPoly::leading_exponent() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.begin()->first;
}

const FieldElem& HPoly::leading_coeff() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.begin()->second;
}

Value HPoly::vtilde(const FieldCtx& ctx) const {
  Value m = Value::inf();
  for (const auto& [e, c] : terms_) m = vmin(m, ctx.val(c));
  return m;
}

FieldElem HPoly::eval(const Vec& x) const {
  if (x.size() != nvars_) throw DimensionError("point arity differs from variable count");
  std::vector<std::vector<FieldElem>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(FieldElem(1));
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * x[i]);
  }
  FieldElem s;
  for (const auto& [e, c] : terms_) {
    FieldElem term = c;
    for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i)
      if (e[i] > 0) term *= powers[i][static_cast<std::size_t>(e[i])];
    s += term;
  }
  return s;
}

namespace {

void check_compatible(const HPoly& a, const HPoly& b) {
  if (a.nvars() != b.nvars()) throw DimensionError("polynomials in different variable counts");
  if (a.degree() != b.degree()) throw DimensionError("adding polynomials of different degrees");
}

}  // namespace

HPoly operator+(const HPoly& a, const HPoly& b) {
  check_compatible(a, b);
  HPoly c = a;
  for (const auto& [e, k] : b.terms_) c.add_term(e, k);
  return c;
}

HPoly operator-(const HPoly& a, const HPoly& b) { return a + (-b); }

HPoly HPoly::operator-() const {
  HPoly c = *this;
  for (auto& [e, k] : c.terms_) k = -k;
  return c;
}

HPoly operator*(const HPoly& a, const HPoly& b) {
  if (a.nvars() != b.nvars()) throw DimensionError("polynomials in different variable counts");
  HPoly c(a.nvars(), a.degree() + b.degree());
  Exponent e(a.nvars());
  for (const auto& [ea, ka] : a.terms_)
    for (const auto& [eb, kb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c.add_term(e, ka * kb);
    }
  return c;
}

bool operator==(const HPoly& a, const HPoly& b) {
  if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, k] : a.terms_) {
    if (e != it->first || !(k == it->second)) return false;
    ++it;
  }
  return true;
}

HPoly HPoly::scaled(const FieldElem& c) const {
  HPoly r(nvars_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

HPoly HPoly::pow(unsigned k) const {
  HPoly result = constant(nvars_, FieldElem(1));
  HPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<HPoly> HPoly::divide(const HPoly& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (nvars_ != b.nvars_) throw DimensionError("polynomials in different variable counts");
  if (degree_ < b.degree_) return is_zero() ? std::optional<HPoly>(HPoly(nvars_, 0)) : std::nullopt;
  HPoly rem = *this, q(nvars_, degree_ - b.degree_);
  const Exponent& lb = b.leading_exponent();
  const FieldElem lc_inv = b.leading_coeff().inv();
  while (!rem.is_zero()) {
    const Exponent& lr = rem.leading_exponent();
    Exponent e(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) return std::nullopt;
    }
    HPoly t = monomial(e, rem.leading_coeff() * lc_inv);
    q = q + t;
    rem = rem - t * b;
  }
  return q;
}

HPoly HPoly::specialize(const std::map<std::uint32_t, Rational>& values) const {
  HPoly r(nvars_, degree_);
  for (const auto& [e, k] : terms_) r.add_term(e, k.specialize(values));
  return r;
}

bool HPoly::has_s() const {
  for (const auto& [e, k] : terms_)
    if (k.has_s()) return true;
  return false;
}

std::string HPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, k] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    FieldElem c = k;
    bool negative = false;
    if (c.den().is_constant() && c.num().is_single_term() && c.num().trailing().coef < 0) {
      negative = true;
      c = -c;
    }
    std::string cs;
    const bool simple = c.den().is_constant() && c.num().is_single_term();
    if (c == FieldElem(1) && !mono.empty()) {
      cs = "";
    } else if (simple) {
      cs = c.str();
    } else {
      cs = "(" + c.str() + ")";
    }
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    os << cs;
    if (!cs.empty() && !mono.empty()) os << "*";
    os << mono;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const HPoly& f) { return os << f.str(); }

std::vector<Exponent> monomial_exponents(std::size_t n, int m) {
  if (m < 0) throw DomainError("negative degree");
  std::vector<Exponent> out;
  Exponent e(n + 1, 0);
  // Descending lex: X0 exponent from m down to 0, recursively.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, m);
  return out;
}

std::vector<HPoly> monomial_basis(std::size_t n, int m) {
  std::vector<HPoly> out;
  for (auto& e : monomial_exponents(n, m)) out.push_back(HPoly::monomial(e));
  return out;
}

std::size_t monomial_count(std::size_t n, int m) {
  if (m < 0) return 0;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m) + n, n);
  return c.get_ui();
}

MonomialIndex::MonomialIndex(std::size_t n, int m) : n_(n), m_(m), exps_(monomial_exponents(n, m)) {
  for (std::size_t i = 0; i < exps_.size(); ++i) pos_.emplace(exps_[i], i);
}

std::size_t MonomialIndex::index(const Exponent& e) const {
  auto it = pos_.find(e);
  if (it == pos_.end()) throw DomainError("exponent not in the monomial basis");
  return it->second;
}

Vec MonomialIndex::coords(const HPoly& f) const {
  if (f.nvars() != n_ + 1 || (f.degree() != m_ && !f.is_zero()))
    throw DimensionError("polynomial does not live in this graded piece");
  Vec v(exps_.size());
  for (const auto& [e, k] : f.terms()) v[index(e)] = k;
  return v;
}

HPoly MonomialIndex::poly(const Vec& coeffs) const {
  if (coeffs.size() != exps_.size()) throw DimensionError("coefficient vector length mismatch");
  HPoly f(n_ + 1, m_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(exps_[i], coeffs[i]);
  return f;
}

ProjPoint::ProjPoint(Vec x) : x_(std::move(x)) {
  if (x_.empty()) throw DimensionError("projective point needs coordinates");
  if (is_zero(x_)) throw DomainError("projective point with all coordinates zero");
}

Value vf_eval(const HPoly& f, const ProjPoint& xi, const FieldCtx& ctx) {
  if (f.nvars() != xi.size()) throw DimensionError("point arity differs from variable count");
  Value vx = Value::inf();
  for (const auto& c : xi.coords()) vx = vmin(vx, ctx.val(c));
  return ctx.val(f.eval(xi.coords())) - Rational(f.degree()) * vx;
}

Value hat_eval(const HPoly& f, const ProjPoint& xi, const FieldCtx& ctx) {
  if (f.degree() < 1) throw DomainError("hat evaluation needs positive degree");
  return vf_eval(f, xi, ctx) / Rational(f.degree());
}

}  // namespace valvol
