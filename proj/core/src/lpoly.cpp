#include "valvol/lpoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "valvol/errors.hpp"

namespace valvol {

int compare(const Monomial& a, const Monomial& b) {
  if (int c = cmp(a.t, b.t); c != 0) return c < 0 ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.s.size() || j < b.s.size()) {
    std::uint32_t va = i < a.s.size() ? a.s[i].first : UINT32_MAX;
    std::uint32_t vb = j < b.s.size() ? b.s[j].first : UINT32_MAX;
    std::uint32_t v = std::min(va, vb);
    std::int32_t ea = va == v ? a.s[i].second : 0;
    std::int32_t eb = vb == v ? b.s[j].second : 0;
    if (ea != eb) return ea < eb ? -1 : 1;
    if (va == v) ++i;
    if (vb == v) ++j;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.t = a.t + b.t;
  std::size_t i = 0, j = 0;
  r.s.reserve(a.s.size() + b.s.size());
  while (i < a.s.size() || j < b.s.size()) {
    if (j == b.s.size() || (i < a.s.size() && a.s[i].first < b.s[j].first)) {
      r.s.push_back(a.s[i++]);
    } else if (i == a.s.size() || b.s[j].first < a.s[i].first) {
      r.s.push_back(b.s[j++]);
    } else {
      std::int32_t e = a.s[i].second + b.s[j].second;
      if (e != 0) r.s.emplace_back(a.s[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial inverse(const Monomial& a) {
  Monomial r;
  r.t = -a.t;
  r.s = a.s;
  for (auto& [v, e] : r.s) e = -e;
  return r;
}

namespace {

struct TermLess {
  bool operator()(const Term& x, const Term& y) const { return compare(x.mono, y.mono) < 0; }
};

}  // namespace

LPoly::LPoly(const Rational& c) {
  if (c != 0) {
    terms_.push_back(Term{Monomial{}, c});
    terms_.back().coef.canonicalize();
  }
}

LPoly LPoly::term(const Rational& c, Monomial m) {
  LPoly p;
  if (c != 0) {
    m.t.canonicalize();
    p.terms_.push_back(Term{std::move(m), c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

LPoly LPoly::s_var(std::uint32_t index, std::int32_t exponent) {
  Monomial m;
  if (exponent != 0) m.s.emplace_back(index, exponent);
  return term(1, std::move(m));
}

LPoly LPoly::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), TermLess{});
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && compare(out.back().mono, t.mono) == 0) {
      out.back().coef += t.coef;
      if (out.back().coef == 0) out.pop_back();
    } else if (t.coef != 0) {
      out.push_back(std::move(t));
    }
  }
  return LPoly(std::move(out));
}

bool LPoly::has_s() const {
  for (const auto& t : terms_)
    if (!t.mono.s.empty()) return true;
  return false;
}

Value LPoly::min_t() const {
  if (terms_.empty()) return Value::inf();
  return Value(terms_.front().mono.t);
}

LPoly LPoly::operator-() const {
  LPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].mono, b[j].mono);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coef = -out.back().coef;
    } else {
      Rational s = subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (s != 0) out.push_back(Term{a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LPoly operator+(const LPoly& a, const LPoly& b) { return LPoly(merge(a.terms_, b.terms_, false)); }
LPoly operator-(const LPoly& a, const LPoly& b) { return LPoly(merge(a.terms_, b.terms_, true)); }

LPoly operator*(const LPoly& a, const LPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.times(a.terms_[0].coef, a.terms_[0].mono);
  if (b.size() == 1) return a.times(b.terms_[0].coef, b.terms_[0].mono);
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back(Term{x.mono * y.mono, x.coef * y.coef});
  return LPoly::from_unsorted(std::move(prod));
}

LPoly LPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

LPoly LPoly::times(const Rational& c, const Monomial& m) const {
  if (c == 0) return {};
  LPoly r = *this;
  // Multiplying by a monomial preserves the order.
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    t.coef *= c;
  }
  return r;
}

std::optional<LPoly> LPoly::exact_div(const LPoly& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return LPoly{};
  if (b.size() == 1) {
    Rational ic = 1 / b.terms_[0].coef;
    return times(ic, inverse(b.terms_[0].mono));
  }

  // Degree box for every variable: exponents of the quotient lie in
  // [min_a - min_b, max_a - max_b]. This also guarantees termination.
  struct Range {
    Rational lo_a, hi_a, lo_b, hi_b;
  };
  std::set<std::uint32_t> vars;
  for (const auto* p : {this, &b})
    for (const auto& t : p->terms_)
      for (const auto& [v, e] : t.mono.s) vars.insert(v);
  auto s_exp = [](const Monomial& m, std::uint32_t v) -> std::int32_t {
    for (const auto& [w, e] : m.s)
      if (w == v) return e;
    return 0;
  };
  auto range_of = [&](const LPoly& p, std::uint32_t v, bool is_t, Rational& lo, Rational& hi) {
    bool first = true;
    for (const auto& t : p.terms_) {
      Rational e = is_t ? t.mono.t : Rational(s_exp(t.mono, v));
      if (first || e < lo) lo = e;
      if (first || e > hi) hi = e;
      first = false;
    }
  };
  Rational tlo_a, thi_a, tlo_b, thi_b;
  range_of(*this, 0, true, tlo_a, thi_a);
  range_of(b, 0, true, tlo_b, thi_b);
  std::map<std::uint32_t, std::pair<Rational, Rational>> s_box;
  for (auto v : vars) {
    Rational lo_a, hi_a, lo_b, hi_b;
    range_of(*this, v, false, lo_a, hi_a);
    range_of(b, v, false, lo_b, hi_b);
    if (hi_a - hi_b < lo_a - lo_b) return std::nullopt;
    s_box[v] = {lo_a - lo_b, hi_a - hi_b};
  }
  const Rational t_lo = tlo_a - tlo_b, t_hi = thi_a - thi_b;
  if (t_hi < t_lo) return std::nullopt;

  const Term& lb = b.leading();
  Monomial lb_inv = inverse(lb.mono);
  Rational lb_coef_inv = 1 / lb.coef;
  std::vector<Term> quotient;
  LPoly r = *this;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    Monomial qm = lr.mono * lb_inv;
    if (qm.t < t_lo || qm.t > t_hi) return std::nullopt;
    for (auto v : vars) {
      std::int32_t e = s_exp(qm, v);
      const auto& [lo, hi] = s_box[v];
      if (e < lo || e > hi) return std::nullopt;
    }
    for (const auto& [v, e] : qm.s)
      if (!vars.count(v)) return std::nullopt;
    Rational qc = lr.coef * lb_coef_inv;
    r = r - b.times(qc, qm);
    quotient.push_back(Term{std::move(qm), qc});
  }
  std::reverse(quotient.begin(), quotient.end());
  return LPoly(std::move(quotient));
}

LPoly LPoly::specialize(const std::map<std::uint32_t, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt{Monomial{t.mono.t, {}}, t.coef};
    for (const auto& [v, e] : t.mono.s) {
      auto it = values.find(v);
      if (it == values.end()) {
        nt.mono.s.emplace_back(v, e);
        continue;
      }
      if (it->second == 0) throw DivisionByZero("specialization value must be nonzero");
      mpz_class num = it->second.get_num(), den = it->second.get_den();
      unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
      mpz_class pn, pd;
      mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
      mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
      Rational p(pn, pd);
      p.canonicalize();
      if (e < 0) p = 1 / p;
      nt.coef *= p;
    }
    out.push_back(std::move(nt));
  }
  return from_unsorted(std::move(out));
}

std::vector<std::uint32_t> LPoly::s_vars() const {
  std::set<std::uint32_t> vs;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono.s) vs.insert(v);
  return {vs.begin(), vs.end()};
}

bool operator==(const LPoly& a, const LPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coef != b.terms_[i].coef || !(a.terms_[i].mono == b.terms_[i].mono)) return false;
  return true;
}

namespace {

std::string mono_str(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << '*';
    first = false;
  };
  if (m.t != 0) {
    sep();
    if (m.t == 1)
      os << 't';
    else if (m.t.get_den() == 1 && m.t > 0)
      os << "t^" << m.t.get_str();
    else
      os << "t^(" << m.t.get_str() << ')';
  }
  for (const auto& [v, e] : m.s) {
    sep();
    os << 's' << v;
    if (e != 1) {
      if (e > 0)
        os << '^' << e;
      else
        os << "^(" << e << ')';
    }
  }
  return os.str();
}

}  // namespace

std::string LPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  // Highest terms first reads more naturally.
  for (std::size_t k = terms_.size(); k-- > 0;) {
    const Term& t = terms_[k];
    Rational c = t.coef;
    bool neg = c < 0;
    if (k + 1 == terms_.size()) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    Rational a = abs(c);
    std::string m = mono_str(t.mono);
    if (m.empty()) {
      os << a.get_str();
    } else if (a == 1) {
      os << m;
    } else if (a.get_den() == 1) {
      os << a.get_str() << '*' << m;
    } else {
      os << a.get_str() << '*' << m;
    }
  }
  return os.str();
}

std::optional<LPoly> univariate_gcd(const LPoly& a, const LPoly& b) {
  if (a.has_s() || b.has_s()) return std::nullopt;
  if (a.is_zero()) return b.is_zero() ? LPoly{} : b.scaled(1 / b.leading().coef);
  if (b.is_zero()) return a.scaled(1 / a.leading().coef);
  // Map t^(k/L) to z^k with exponents shifted to start at 0.
  mpz_class L = 1;
  for (const auto* p : {&a, &b})
    for (const auto& t : p->terms()) {
      mpz_class d = t.mono.t.get_den();
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
    }
  auto to_dense = [&](const LPoly& p) {
    Rational lo = p.trailing().mono.t;
    std::vector<Rational> c;
    for (const auto& t : p.terms()) {
      Rational k = (t.mono.t - lo) * L;
      std::size_t idx = k.get_num().get_ui();
      if (c.size() <= idx) c.resize(idx + 1, Rational(0));
      c[idx] = t.coef;
    }
    return c;
  };
  // Primitive remainder sequence over Z: clear denominators and divide out
  // the content after every remainder.
  auto primitive = [](std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    mpz_class g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
      for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  };
  auto to_integer = [&](const std::vector<Rational>& q) {
    mpz_class den = 1;
    for (const auto& c : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) v[i] = q[i].get_num() * (den / q[i].get_den());
    primitive(v);
    return v;
  };
  std::vector<mpz_class> x = to_integer(to_dense(a)), y = to_integer(to_dense(b));
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    // pseudo-remainder of x by y
    while (x.size() >= y.size() && !x.empty()) {
      const mpz_class lx = x.back(), ly = y.back();
      const std::size_t shift = x.size() - y.size();
      for (auto& c : x) c *= ly;
      for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] -= lx * y[i];
      x.pop_back();
      while (!x.empty() && x.back() == 0) x.pop_back();
    }
    primitive(x);
    std::swap(x, y);
  }
  const mpz_class lc = x.back();
  std::vector<Term> terms;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) {
      Rational e(mpz_class(static_cast<unsigned long>(i)), L);
      e.canonicalize();
      Rational c(x[i], lc);
      c.canonicalize();
      terms.push_back(Term{Monomial{e, {}}, c});
    }
  LPoly g;
  for (auto& t : terms) g = g + LPoly::term(t.coef, t.mono);
  return g;
}

}  // namespace valvol
