#include "valvol/field.hpp"

#include <ostream>

#include "valvol/errors.hpp"

namespace valvol {

FieldElem::FieldElem(LPoly num, LPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("field element with zero denominator");
  normalize();
}

void FieldElem::normalize() {
  if (num_.is_zero()) {
    den_ = LPoly(Rational(1));
    return;
  }
  if (den_.is_constant() && den_.trailing().coef == 1) return;
  if (den_.is_single_term()) {
    const Term& d = den_.trailing();
    num_ = num_.times(1 / d.coef, inverse(d.mono));
    den_ = LPoly(Rational(1));
    return;
  }
  if (auto q = num_.exact_div(den_)) {
    num_ = std::move(*q);
    den_ = LPoly(Rational(1));
    return;
  }
  if (auto g = univariate_gcd(num_, den_); g && !g->is_single_term()) {
    num_ = *num_.exact_div(*g);
    den_ = *den_.exact_div(*g);
  }
  const Term d = den_.trailing();
  Monomial m = inverse(d.mono);
  Rational c = 1 / d.coef;
  num_ = num_.times(c, m);
  den_ = den_.times(c, m);
}

Rational FieldElem::to_rational() const {
  if (!is_rational()) throw DomainError("field element '" + str() + "' is not a rational constant");
  if (num_.is_zero()) return 0;
  return num_.trailing().coef / den_.trailing().coef;
}

Value FieldElem::val() const {
  if (num_.is_zero()) return Value::inf();
  return Value(Rational(num_.trailing().mono.t - den_.trailing().mono.t));
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  return FieldElem(den_, num_);
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

bool is_one(const LPoly& p) { return p.is_constant() && !p.is_zero() && p.trailing().coef == 1; }

}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (is_one(a.den_)) return FieldElem(a.num_ + b.num_);
    return FieldElem(a.num_ + b.num_, a.den_);
  }
  if (is_one(a.den_)) return FieldElem(a.num_ * b.den_ + b.num_, b.den_);
  if (is_one(b.den_)) return FieldElem(a.num_ + b.num_ * a.den_, a.den_);
  return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  if (a.is_zero() || b.is_zero()) return FieldElem();
  if (is_one(a.den_) && is_one(b.den_)) return FieldElem(a.num_ * b.num_);
  // Cross-cancel before multiplying to keep sizes down.
  LPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!is_one(bd))
    if (auto q = an.exact_div(bd)) {
      an = std::move(*q);
      bd = LPoly(Rational(1));
    }
  if (!is_one(ad))
    if (auto q = bn.exact_div(ad)) {
      bn = std::move(*q);
      ad = LPoly(Rational(1));
    }
  return FieldElem(an * bn, ad * bd);
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

FieldElem FieldElem::pow(unsigned k) const {
  FieldElem result(1), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

FieldElem FieldElem::specialize(const std::map<std::uint32_t, Rational>& values) const {
  LPoly d = den_.specialize(values);
  if (d.is_zero()) throw DivisionByZero("specialization hits a pole");
  return FieldElem(num_.specialize(values), d);
}

std::string FieldElem::str() const {
  if (is_one(den_)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.str(); }

Value padic_val(const Rational& q, unsigned long p) {
  if (q == 0) return Value::inf();
  long v = 0;
  mpz_class n = q.get_num(), d = q.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    --v;
  }
  return Value(v);
}

FieldCtx FieldCtx::padic(unsigned long p, std::uint64_t seed) {
  if (p < 2) throw InputError("p-adic instance needs a prime p >= 2");
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InputError("p-adic instance needs a prime, got " + std::to_string(p));
  return FieldCtx{FieldKind::PAdic, p, seed};
}

Value FieldCtx::val(const FieldElem& x) const {
  if (kind == FieldKind::Gauss) return x.val();
  return padic_val(x.to_rational(), prime);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GenericSource::GenericSource(FieldCtx ctx, std::uint64_t stream, std::uint32_t first_var)
    : ctx_(ctx), rng_(mix_seed(ctx.seed, stream)), next_var_(first_var) {}

Rational GenericSource::random_rational() {
  std::uniform_int_distribution<long> num(1, 97), den(1, 13), sign(0, 1);
  Rational q(num(rng_) * (sign(rng_) ? 1 : -1), den(rng_));
  q.canonicalize();
  return q;
}

Rational GenericSource::random_in(long bound, long den) {
  std::uniform_int_distribution<long> d(1, den);
  long q = d(rng_);
  std::uniform_int_distribution<long> n(-bound * q, bound * q);
  Rational r(n(rng_), q);
  r.canonicalize();
  return r;
}

FieldElem GenericSource::fresh_generic(const Value& c) {
  if (c.is_inf()) throw DomainError("fresh_generic needs a finite value");
  ++calls_;
  if (ctx_.kind == FieldKind::PAdic) {
    const Rational& e = c.rational();
    if (e.get_den() != 1) throw DomainError("p-adic value group is Z; got " + c.str());
    std::uniform_int_distribution<unsigned long> pick(1, 10 * ctx_.prime);
    unsigned long a = 0, b = 0;
    do a = pick(rng_); while (a % ctx_.prime == 0);
    do b = pick(rng_); while (b % ctx_.prime == 0);
    long k = e.get_num().get_si();
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), ctx_.prime, static_cast<unsigned long>(k < 0 ? -k : k));
    Rational unit(a, b);
    unit.canonicalize();
    Rational x = k >= 0 ? Rational(unit * pk) : Rational(unit / pk);
    return FieldElem(x);
  }
  LPoly unit = LPoly(Rational(1)) + LPoly::s_var(fresh_var()).scaled(random_rational());
  return FieldElem(unit * LPoly::t_pow(c.rational()));
}

}  // namespace valvol
