#include "valvol/parse.hpp"

#include <cctype>
#include <map>
#include <numeric>

#include "valvol/errors.hpp"

namespace valvol {

namespace {

// Polynomial in X with field coefficients, not necessarily homogeneous.
struct Expr {
  std::map<Exponent, FieldElem> terms;

  static Expr constant(std::size_t nvars, const FieldElem& c) {
    Expr e;
    if (!c.is_zero()) e.terms.emplace(Exponent(nvars, 0), c);
    return e;
  }
  bool x_free() const {
    for (const auto& [ex, c] : terms)
      for (int k : ex)
        if (k != 0) return false;
    return true;
  }
  FieldElem as_field(std::size_t nvars) const {
    auto it = terms.find(Exponent(nvars, 0));
    return it == terms.end() ? FieldElem(0) : it->second;
  }
  void add(const Exponent& ex, const FieldElem& c) {
    auto [it, fresh] = terms.emplace(ex, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

Expr add(const Expr& a, const Expr& b, bool negate) {
  Expr c = a;
  for (const auto& [ex, k] : b.terms) c.add(ex, negate ? -k : k);
  return c;
}

Expr mul(const Expr& a, const Expr& b) {
  Expr c;
  for (const auto& [ea, ka] : a.terms)
    for (const auto& [eb, kb] : b.terms) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c.add(e, ka * kb);
    }
  return c;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

  Expr parse_all() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }
  long small_index() {
    mpz_class k = integer();
    if (k > 1000000) fail("index too large");
    return k.get_si();
  }

  Expr expr() {
    bool neg = eat('-');
    Expr e = term();
    if (neg) e = add(Expr{}, e, true);
    for (;;) {
      if (eat('+')) {
        e = add(e, term(), false);
      } else if (eat('-')) {
        e = add(e, term(), true);
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = power();
    for (;;) {
      if (eat('*')) {
        e = mul(e, power());
      } else if (eat('/')) {
        std::size_t at = pos_;
        Expr d = power();
        if (!d.x_free()) {
          pos_ = at;
          fail("division by a polynomial in X");
        }
        FieldElem q = d.as_field(nvars_);
        if (q.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        e = mul(e, Expr::constant(nvars_, q.inv()));
      } else {
        return e;
      }
    }
  }

  Rational exponent() {
    if (eat('(')) {
      bool neg = eat('-');
      Rational q(integer());
      if (eat('/')) {
        mpz_class d = integer();
        if (d == 0) fail("zero denominator");
        q /= Rational(d);
      }
      if (!eat(')')) fail("expected ')'");
      return neg ? Rational(-q) : q;
    }
    bool neg = eat('-');
    Rational q(integer());
    return neg ? Rational(-q) : q;
  }

  Expr power() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == 't') {
      ++pos_;
      Rational e = 1;
      if (eat('^')) e = exponent();
      return Expr::constant(nvars_, FieldElem::t_pow(e));
    }
    Expr base = atom();
    if (!eat('^')) return base;
    Rational e = exponent();
    if (e.get_den() != 1) fail("only t takes fractional exponents");
    if (e < 0) {
      if (!base.x_free()) fail("negative power of a polynomial in X");
      FieldElem b = base.as_field(nvars_);
      if (b.is_zero()) fail("negative power of zero");
      return Expr::constant(nvars_, b.inv().pow(static_cast<unsigned>(mpz_class(-e.get_num()).get_ui())));
    }
    if (e > 4096) fail("exponent too large");
    unsigned k = static_cast<unsigned>(e.get_num().get_ui());
    Expr r = Expr::constant(nvars_, FieldElem(1));
    for (unsigned i = 0; i < k; ++i) r = mul(r, base);
    return r;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr::constant(nvars_, FieldElem(Rational(integer())));
    }
    if (c == 's') {
      ++pos_;
      if (!at_digit()) fail("expected an index after s");
      long i = small_index();
      return Expr::constant(nvars_, FieldElem::s_var(static_cast<std::uint32_t>(i)));
    }
    if (c == 'X') {
      ++pos_;
      if (!at_digit()) fail("expected an index after X");
      std::size_t at = pos_;
      long i = small_index();
      if (static_cast<std::size_t>(i) >= nvars_) {
        pos_ = at;
        fail("variable X" + std::to_string(i) + " out of range");
      }
      Exponent ex(nvars_, 0);
      ex[static_cast<std::size_t>(i)] = 1;
      Expr e;
      e.terms.emplace(ex, FieldElem(1));
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElem parse_field(std::string_view text) {
  Expr e = Parser(text, 0).parse_all();
  return e.as_field(0);
}

HPoly parse_hpoly(std::string_view text, std::size_t nvars) {
  if (nvars == 0) throw InputError("polynomial needs at least one variable");
  Expr e = Parser(text, nvars).parse_all();
  if (e.terms.empty()) return HPoly(nvars, 0);
  const Exponent& first = e.terms.begin()->first;
  const int d = std::accumulate(first.begin(), first.end(), 0);
  HPoly f(nvars, d);
  for (const auto& [ex, k] : e.terms) {
    if (std::accumulate(ex.begin(), ex.end(), 0) != d)
      throw InputError("polynomial is not homogeneous: \"" + std::string(text) + "\"");
    f.add_term(ex, k);
  }
  return f;
}

}  // namespace valvol
